#include "core/trace.hpp"

#include <istream>
#include <ostream>

namespace permhom {

namespace {

Json pairs_json(const GraphPairs& g) {
  Json arr = Json::array();
  for (const auto& [a, b] : g) arr.push_back(Json::array({a, b}));
  return arr;
}

GraphPairs pairs_from(const Json& arr) {
  GraphPairs out;
  for (const auto& p : arr) out.push_back({p.at(0).get<std::string>(), p.at(1).get<std::string>()});
  return out;
}

Func graph_func(const GraphPairs& g, const std::string& name) {
  std::vector<std::pair<Ordinal, Ordinal>> ps;
  for (const auto& [a, b] : g) ps.push_back({Ordinal::parse(a), Ordinal::parse(b)});
  return FiniteInjection::from_pairs(ps).as_func(name);
}

TermContext context_from(const Json& registry) {
  TermContext ctx;
  for (const auto& [name, graph] : registry.items())
    ctx.registry[name] = graph_func(pairs_from(graph), name);
  return ctx;
}

}  // namespace

void write_record(std::ostream& out, const Json& rec) { out << rec.dump() << "\n"; }

std::vector<Json> read_records(std::istream& in) {
  std::vector<Json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(Json::parse(line));
  }
  return out;
}

Json witness_record(const std::vector<std::string>& terms, const std::string& alpha,
                    const std::string& alpha_star, const GraphPairs& g,
                    const GraphMap& registry) {
  Json reg = Json::object();
  for (const auto& [name, graph] : registry) reg[name] = pairs_json(graph);
  return Json{{"type", "witness"}, {"terms", terms},       {"alpha", alpha},
              {"alpha_star", alpha_star}, {"g", pairs_json(g)}, {"registry", reg}};
}

Json requirement_record(const RequirementRecord& rec, const GraphPairs& r,
                        const GraphMap& registry) {
  Json reg = Json::object();
  for (const auto& [name, graph] : registry) reg[name] = pairs_json(graph);
  return Json{{"type", "requirement"},
              {"round", rec.round == SIZE_MAX ? Json(nullptr) : Json(rec.round)},
              {"m", rec.m},
              {"terms", rec.terms},
              {"alpha", rec.alpha},
              {"alpha_star", rec.alpha_star},
              {"g", pairs_json(rec.g_pairs)},
              {"r", pairs_json(r)},
              {"registry", reg}};
}

bool verify_log(const std::vector<Json>& records, std::vector<std::string>* failures) {
  bool ok = true;
  auto fail = [&](std::size_t i, const std::string& msg) {
    ok = false;
    if (failures) failures->push_back("record " + std::to_string(i) + ": " + msg);
  };
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Json& rec = records[i];
    std::string type = rec.value("type", "");
    if (type != "witness" && type != "requirement") continue;
    try {
      Ordinal alpha = Ordinal::parse(rec.at("alpha").get<std::string>());
      Ordinal alpha_star = Ordinal::parse(rec.at("alpha_star").get<std::string>());
      Func gf = graph_func(pairs_from(rec.at("g")), "g");
      TermContext ctx = context_from(rec.value("registry", Json::object()));
      if (type == "requirement") {
        if (alpha < Ordinal(rec.at("m").get<std::uint64_t>()))
          fail(i, "witness below the floor");
        Func r = graph_func(pairs_from(rec.at("r")), "r");
        auto ra = r.fwd(alpha);
        if (!ra || *ra != alpha_star) fail(i, "alpha_star is not r(alpha)");
      }
      for (const auto& ts : rec.at("terms")) {
        std::string s = ts.get<std::string>();
        auto v = term_eval(term_parse(s), gf, alpha, ctx);
        if (!v) fail(i, "term " + s + " undefined at the witness");
        else if (*v == alpha_star) fail(i, "term " + s + " hits the protected value");
      }
    } catch (const std::exception& e) {
      fail(i, std::string("malformed record: ") + e.what());
    }
  }
  return ok;
}

}  // namespace permhom
