#include "core/interval_set.hpp"

#include <algorithm>
#include <sstream>

namespace permhom {

IntervalSet IntervalSet::interval(Ordinal lo, Ordinal hi) {
  if (!(lo < hi)) {
    if (lo == hi) return {};
    throw std::invalid_argument("interval with lo > hi: [" + lo.str() + "," + hi.str() + ")");
  }
  IntervalSet s;
  s.iv_.push_back({std::move(lo), std::move(hi)});
  return s;
}

IntervalSet IntervalSet::from_intervals(std::vector<Interval> iv) {
  std::erase_if(iv, [](const Interval& i) { return i.lo == i.hi; });
  for (const auto& i : iv)
    if (i.lo > i.hi)
      throw std::invalid_argument("interval with lo > hi: [" + i.lo.str() + "," + i.hi.str() + ")");
  std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  IntervalSet s;
  for (auto& i : iv) {
    if (!s.iv_.empty() && i.lo <= s.iv_.back().hi) {
      if (s.iv_.back().hi < i.hi) s.iv_.back().hi = i.hi;
    } else {
      s.iv_.push_back(std::move(i));
    }
  }
  return s;
}

bool IntervalSet::contains(const Ordinal& x) const {
  for (const auto& i : iv_) {
    if (x < i.lo) return false;
    if (x < i.hi) return true;
  }
  return false;
}

bool IntervalSet::subset_of(const IntervalSet& o) const {
  return iset_difference(*this, o).empty();
}

bool IntervalSet::operator<(const IntervalSet& o) const {
  std::size_t n = std::min(iv_.size(), o.iv_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (iv_[i].lo != o.iv_[i].lo) return iv_[i].lo < o.iv_[i].lo;
    if (iv_[i].hi != o.iv_[i].hi) return iv_[i].hi < o.iv_[i].hi;
  }
  return iv_.size() < o.iv_.size();
}

Ordinal IntervalSet::order_type() const {
  Ordinal t;
  for (const auto& i : iv_) t = ord_add(t, ord_left_sub(i.lo, i.hi));
  return t;
}

Ordinal IntervalSet::element_at(const Ordinal& p) const {
  Ordinal rest = p;
  for (const auto& i : iv_) {
    Ordinal len = ord_left_sub(i.lo, i.hi);
    if (rest < len) return ord_add(i.lo, rest);
    rest = ord_left_sub(len, rest);
  }
  throw std::out_of_range("element_at: position " + p.str() + " >= order type " + order_type().str());
}

Ordinal IntervalSet::position_of(const Ordinal& x) const {
  Ordinal acc;
  for (const auto& i : iv_) {
    if (x < i.hi && !(x < i.lo)) return ord_add(acc, ord_left_sub(i.lo, x));
    acc = ord_add(acc, ord_left_sub(i.lo, i.hi));
  }
  throw std::out_of_range("position_of: " + x.str() + " not in " + str());
}

IntervalSet IntervalSet::positions_of(const IntervalSet& m) const {
  IntervalSet inside = iset_intersect(*this, m);
  std::vector<Interval> out;
  for (const auto& i : inside.intervals()) {
    // [i.lo, i.hi) lies within one component, so positions are contiguous
    Ordinal p = position_of(i.lo);
    out.push_back({p, ord_add(p, ord_left_sub(i.lo, i.hi))});
  }
  return from_intervals(std::move(out));
}

IntervalSet IntervalSet::elements_at(const IntervalSet& positions) const {
  IntervalSet valid = iset_intersect(positions, IntervalSet::interval(Ordinal(0), order_type()));
  std::vector<Interval> out;
  for (const auto& p : valid.intervals()) {
    // split [p.lo, p.hi) along this set's components
    Ordinal cur = p.lo;
    while (cur < p.hi) {
      Ordinal x = element_at(cur);
      // remaining length of the component containing x
      Ordinal comp_hi;
      for (const auto& i : iv_) {
        if (x < i.hi && !(x < i.lo)) {
          comp_hi = i.hi;
          break;
        }
      }
      Ordinal room = ord_left_sub(x, comp_hi);
      Ordinal want = ord_left_sub(cur, p.hi);
      Ordinal take = std::min(room, want);
      out.push_back({x, ord_add(x, take)});
      cur = ord_add(cur, take);
      if (take.is_zero()) throw std::logic_error("elements_at made no progress");
    }
  }
  return from_intervals(std::move(out));
}

std::string IntervalSet::str() const {
  if (iv_.empty()) return "empty";
  std::ostringstream os;
  bool first = true;
  for (const auto& i : iv_) {
    if (!first) os << '|';
    first = false;
    os << '[' << i.lo.str() << ',' << i.hi.str() << ')';
  }
  return os.str();
}

IntervalSet IntervalSet::parse(const std::string& s) {
  if (s == "empty" || s.empty()) return {};
  std::vector<Interval> iv;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != '[') throw std::invalid_argument("bad interval set: " + s);
    std::size_t comma = s.find(',', pos);
    std::size_t close = s.find(')', pos);
    if (comma == std::string::npos || close == std::string::npos || comma > close)
      throw std::invalid_argument("bad interval set: " + s);
    iv.push_back({Ordinal::parse(s.substr(pos + 1, comma - pos - 1)),
                  Ordinal::parse(s.substr(comma + 1, close - comma - 1))});
    pos = close + 1;
    if (pos < s.size()) {
      if (s[pos] != '|') throw std::invalid_argument("bad interval set: " + s);
      ++pos;
    }
  }
  return from_intervals(std::move(iv));
}

IntervalSet iset_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<IntervalSet::Interval> iv = a.intervals();
  iv.insert(iv.end(), b.intervals().begin(), b.intervals().end());
  return IntervalSet::from_intervals(std::move(iv));
}

IntervalSet iset_intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<IntervalSet::Interval> out;
  for (const auto& x : a.intervals()) {
    for (const auto& y : b.intervals()) {
      Ordinal lo = std::max(x.lo, y.lo);
      Ordinal hi = std::min(x.hi, y.hi);
      if (lo < hi) out.push_back({lo, hi});
    }
  }
  return IntervalSet::from_intervals(std::move(out));
}

IntervalSet iset_difference(const IntervalSet& a, const IntervalSet& b) {
  std::vector<IntervalSet::Interval> out;
  for (const auto& x : a.intervals()) {
    Ordinal lo = x.lo;
    for (const auto& y : b.intervals()) {
      if (y.hi <= lo) continue;
      if (x.hi <= y.lo) break;
      if (lo < y.lo) out.push_back({lo, std::min(y.lo, x.hi)});
      lo = std::max(lo, y.hi);
      if (!(lo < x.hi)) break;
    }
    if (lo < x.hi) out.push_back({lo, x.hi});
  }
  return IntervalSet::from_intervals(std::move(out));
}

}  // namespace permhom
