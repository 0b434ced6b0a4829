#include "core/rho_term.hpp"

#include <sstream>
#include <stdexcept>

namespace permhom {

std::string nterm_str(const NTerm& t) {
  if (t.empty()) return "e";
  std::ostringstream os;
  bool first = true;
  for (const auto& a : t) {
    if (!first) os << '.';
    first = false;
    if (std::holds_alternative<FAtom>(a)) {
      const auto& f = std::get<FAtom>(a);
      os << f.id << (f.inv ? "^-1" : "");
    } else {
      const auto& r = std::get<RhoAtom>(a);
      os << "rho{" << r.iso.source().str() << "->" << r.iso.target().str() << "}";
    }
  }
  return os.str();
}

std::optional<Ordinal> nterm_eval(const NTerm& t, const TermContext& ctx, const Ordinal& alpha) {
  Ordinal v = alpha;
  for (std::size_t i = t.size(); i-- > 0;) {
    std::optional<Ordinal> next;
    if (std::holds_alternative<FAtom>(t[i])) {
      const auto& f = std::get<FAtom>(t[i]);
      if (!f.base.contains(v)) return std::nullopt;  // the un-extended function
      const Func& fn = ctx.lookup(f.id);
      next = f.inv ? fn.bwd(v) : fn.fwd(v);
    } else {
      const auto& r = std::get<RhoAtom>(t[i]).iso;
      if (!r.source().contains(v)) return std::nullopt;
      next = r.apply(v);
    }
    if (!next) return std::nullopt;
    v = *next;
  }
  return v;
}

namespace {

void require_fixes(const OrderIso& iso, const Ordinal& kappa) {
  if (!iso.fixes_initial(kappa))
    throw std::invalid_argument("kappa_normalize: iso atom does not fix [0," + kappa.str() + ")");
}

}  // namespace

NTerm kappa_normalize(const NTerm& t, const Ordinal& kappa) {
  // strip iso atoms at both ends; on kappa x kappa they act as the identity
  std::size_t lo = 0, hi = t.size();
  while (lo < hi && std::holds_alternative<RhoAtom>(t[lo])) {
    require_fixes(std::get<RhoAtom>(t[lo]).iso, kappa);
    ++lo;
  }
  while (hi > lo && std::holds_alternative<RhoAtom>(t[hi - 1])) {
    require_fixes(std::get<RhoAtom>(t[hi - 1]).iso, kappa);
    --hi;
  }
  // fuse interior iso runs; every run now sits between two F atoms
  NTerm out;
  std::size_t i = lo;
  while (i < hi) {
    if (std::holds_alternative<FAtom>(t[i])) {
      const auto& f = std::get<FAtom>(t[i]);
      if (!IntervalSet::interval(Ordinal(0), kappa).subset_of(f.base) && !kappa.is_zero())
        throw std::invalid_argument("kappa_normalize: F base misses [0," + kappa.str() + ")");
      out.push_back(t[i]);
      ++i;
      continue;
    }
    // run of iso atoms; rightmost applies first, so fold right-to-left
    std::size_t j = i;
    while (j < hi && std::holds_alternative<RhoAtom>(t[j])) ++j;
    OrderIso fused = std::get<RhoAtom>(t[j - 1]).iso;
    require_fixes(fused, kappa);
    for (std::size_t k = j - 1; k-- > i;) {
      require_fixes(std::get<RhoAtom>(t[k]).iso, kappa);
      fused = OrderIso::compose(std::get<RhoAtom>(t[k]).iso, fused);
    }
    // restrict to what the neighbouring permutations can feed and absorb:
    // the right F atom produces values in its base, the left one consumes
    // values in its base
    const auto& right = std::get<FAtom>(t[j]);
    const auto& left = std::get<FAtom>(out.back());
    OrderIso restricted = fused.restricted_source(right.base);
    IntervalSet tgt_in = iset_intersect(restricted.target(), left.base);
    restricted = restricted.inverted().restricted_source(tgt_in).inverted();
    out.push_back(RhoAtom{restricted});
    i = j;
  }
  return out;
}

}  // namespace permhom
