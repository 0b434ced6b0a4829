#include "core/nice_family.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace permhom {

namespace {

using nlohmann::json;

json pair_key(std::size_t a, std::size_t b) { return json::array({a, b}); }

}  // namespace

std::string NiceFamily::to_json() const {
  json j;
  j["members"] = json::array();
  for (const auto& m : members) j["members"].push_back(m.str());
  j["I"] = I;
  j["J"] = json::array();
  for (const auto& [k, v] : J) j["J"].push_back({{"pair", pair_key(k.first, k.second)}, {"witnesses", v}});
  j["zeta"] = json::array();
  for (const auto& [k, z] : zeta) j["zeta"].push_back({{"pair", pair_key(k.first, k.second)}, {"index", z}});
  return j.dump(2);
}

NiceFamily NiceFamily::from_json(const std::string& text) {
  json j = json::parse(text);
  NiceFamily fam;
  for (const auto& s : j.at("members")) fam.members.push_back(IntervalSet::parse(s.get<std::string>()));
  fam.I = j.at("I").get<std::vector<std::vector<std::size_t>>>();
  for (const auto& e : j.at("J")) {
    auto p = e.at("pair");
    fam.J[{p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>()}] =
        e.at("witnesses").get<std::vector<std::size_t>>();
  }
  if (j.contains("zeta"))
    for (const auto& e : j.at("zeta")) {
      auto p = e.at("pair");
      fam.zeta[{p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>()}] = e.at("index").get<std::size_t>();
    }
  if (fam.I.size() != fam.members.size()) throw std::invalid_argument("family: |I| != |members|");
  return fam;
}

FamilyReport check_n2(const NiceFamily& fam) {
  FamilyReport rep;
  std::size_t m = fam.size();
  if (fam.I.size() != m) {
    rep.ok = false;
    rep.violations.push_back("witness list length mismatch");
    return rep;
  }
  for (std::size_t b = 0; b < m; ++b) {
    for (std::size_t z : fam.I[b])
      if (z >= b) {
        rep.ok = false;
        rep.violations.push_back("I[" + std::to_string(b) + "] contains index >= " + std::to_string(b));
      }
    for (std::size_t a = 0; a < b; ++a) {
      IntervalSet common = iset_intersect(fam.members[a], fam.members[b]);
      auto it = fam.J.find({a, b});
      IntervalSet cover;
      if (it != fam.J.end())
        for (std::size_t z : it->second) {
          if (std::find(fam.I[b].begin(), fam.I[b].end(), z) == fam.I[b].end()) {
            rep.ok = false;
            rep.violations.push_back("J[" + std::to_string(a) + "," + std::to_string(b) +
                                     "] lists an index outside I");
          }
          if (z < m) cover = iset_union(cover, fam.members[z]);
        }
      if (!common.subset_of(cover)) {
        rep.ok = false;
        rep.violations.push_back("A" + std::to_string(a) + " int A" + std::to_string(b) +
                                 " not covered by its witnesses");
      }
      auto zt = fam.zeta.find({a, b});
      if (zt != fam.zeta.end()) {
        std::size_t z = zt->second;
        if (z >= m || iset_intersect(fam.members[z], fam.members[b]) != common) {
          rep.strong_ok = false;
          rep.violations.push_back("strong witness fails at (" + std::to_string(a) + "," +
                                   std::to_string(b) + ")");
        }
      }
    }
  }
  for (std::size_t a = 0; a < m && rep.directed; ++a)
    for (std::size_t b = a + 1; b < m && rep.directed; ++b) {
      IntervalSet u = iset_union(fam.members[a], fam.members[b]);
      bool dominated = false;
      for (std::size_t c = 0; c < m && !dominated; ++c) dominated = u.subset_of(fam.members[c]);
      if (!dominated) rep.directed = false;
    }
  return rep;
}

NiceFamily clopen_family(std::uint32_t k, std::uint32_t depth) {
  if (k < 1) throw std::invalid_argument("clopen_family: k >= 1 required");
  std::set<IntervalSet> pool;
  if (depth == 0) {
    pool.insert(IntervalSet::interval(Ordinal(0), Ordinal::omega_pow(k)));
  } else {
    for (std::uint64_t n = 1; n <= depth; ++n) pool.insert(IntervalSet::interval(Ordinal(0), Ordinal(n)));
    for (std::uint32_t j = 1; j <= k; ++j)
      for (std::uint64_t c = 1; c <= depth; ++c) {
        pool.insert(IntervalSet::interval(Ordinal(0), Ordinal::omega_pow(j, c)));
        pool.insert(IntervalSet::interval(Ordinal::omega_pow(j, c), Ordinal::omega_pow(j, c + 1)));
      }
    // close under pairwise intersection
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<IntervalSet> cur(pool.begin(), pool.end());
      for (std::size_t i = 0; i < cur.size(); ++i)
        for (std::size_t j = i + 1; j < cur.size(); ++j) {
          IntervalSet t = iset_intersect(cur[i], cur[j]);
          if (!t.empty() && pool.insert(t).second) grew = true;
        }
    }
  }

  // order with strict subsets first; ties resolved by textual form
  std::vector<IntervalSet> rest(pool.begin(), pool.end());
  std::sort(rest.begin(), rest.end(),
            [](const IntervalSet& a, const IntervalSet& b) { return a.str() < b.str(); });
  std::vector<IntervalSet> ordered;
  while (!rest.empty()) {
    bool placed = false;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      bool ready = true;
      for (std::size_t j = 0; j < rest.size() && ready; ++j)
        if (j != i && rest[j].subset_of(rest[i])) ready = false;
      if (ready) {
        ordered.push_back(rest[i]);
        rest.erase(rest.begin() + i);
        placed = true;
        break;
      }
    }
    if (!placed) throw std::logic_error("clopen_family: subset order has a cycle");
  }

  NiceFamily fam;
  fam.members = ordered;
  fam.I.resize(ordered.size());
  auto index_of = [&](const IntervalSet& s) -> std::size_t {
    for (std::size_t i = 0; i < ordered.size(); ++i)
      if (ordered[i] == s) return i;
    throw std::logic_error("clopen_family: pool not intersection-closed");
  };
  for (std::size_t b = 0; b < ordered.size(); ++b) {
    std::set<std::size_t> wit;
    for (std::size_t a = 0; a < b; ++a) {
      IntervalSet t = iset_intersect(ordered[a], ordered[b]);
      std::size_t z = t.empty() ? a : index_of(t);
      fam.J[{a, b}] = {z};
      fam.zeta[{a, b}] = z;
      wit.insert(z);
    }
    fam.I[b].assign(wit.begin(), wit.end());
  }
  return fam;
}

}  // namespace permhom
