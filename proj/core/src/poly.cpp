#include "chainlab/poly.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include "chainlab/errors.hpp"

namespace chainlab {

std::string Var::name() const {
  switch (kind) {
    case VarKind::X:
      return "x";
    case VarKind::U:
      return index == 0 ? "u" : "u_" + std::string(static_cast<std::size_t>(index), 'x');
    case VarKind::Zeta:
      return index == 0 ? "zeta" : "zeta_" + std::string(static_cast<std::size_t>(index), 'x');
    case VarKind::V:
      return "v";
    case VarKind::ExpV:
      return index == 1 ? "exp(v)" : "exp(v/" + std::to_string(index) + ")";
    case VarKind::ExpX:
      return index == 1 ? "exp(x)" : "exp(x/" + std::to_string(index) + ")";
    case VarKind::CFun:
      return index == 0 ? "c" : "c_" + std::string(static_cast<std::size_t>(index), 'x');
    case VarKind::Param:
      return "k" + std::to_string(index);
    case VarKind::ConstC:
      return "C";
  }
  return "?";
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Var v, int exponent) {
  if (exponent != 0) factors_.emplace_back(v, exponent);
}

Monomial Monomial::fromFactors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
  Monomial m;
  for (const auto& [v, e] : factors) {
    if (!m.factors_.empty() && m.factors_.back().first == v) {
      m.factors_.back().second += e;
    } else {
      m.factors_.emplace_back(v, e);
    }
  }
  std::erase_if(m.factors_, [](const Factor& f) { return f.second == 0; });
  return m;
}

int Monomial::degree(Var v) const {
  for (const auto& [w, e] : factors_) {
    if (w == v) return e;
    if (v < w) break;
  }
  return 0;
}

int Monomial::totalDegree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

std::optional<Monomial> Monomial::dividedBy(const Monomial& other) const {
  Monomial out;
  auto a = factors_.begin();
  for (const auto& [v, e] : other.factors_) {
    while (a != factors_.end() && a->first < v) out.factors_.push_back(*a++);
    if (a == factors_.end() || a->first != v || a->second < e) return std::nullopt;
    if (a->second > e) out.factors_.emplace_back(v, a->second - e);
    ++a;
  }
  while (a != factors_.end()) out.factors_.push_back(*a++);
  return out;
}

Monomial Monomial::without(Var v) const {
  Monomial out = *this;
  std::erase_if(out.factors_, [v](const Factor& f) { return f.first == v; });
  return out;
}

Monomial Monomial::withDegree(Var v, int exponent) const {
  std::vector<Factor> fs = without(v).factors_;
  fs.emplace_back(v, exponent);
  return fromFactors(std::move(fs));
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  std::vector<Monomial::Factor> out;
  for (const auto& [v, e] : a.factors()) {
    const int f = b.degree(v);
    if (f > 0) out.emplace_back(v, std::min(e, f));
  }
  return Monomial::fromFactors(std::move(out));
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    if (fa[i].first != fb[i].first) return fb[i].first < fa[i].first;
    if (fa[i].second != fb[i].second) return fa[i].second < fb[i].second;
  }
  return fa.size() < fb.size();
}

// -------------------------------------------------------------------- Poly

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly::Poly(long c) : Poly(Rational(c)) {}

Poly Poly::variable(Var v, int exponent) { return term(Rational(1), Monomial(v, exponent)); }

Poly Poly::term(const Rational& c, Monomial m) {
  Poly p;
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

bool Poly::isConstant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.isOne()); }

std::optional<Rational> Poly::constantValue() const {
  if (terms_.empty()) return Rational(0);
  if (isConstant()) return terms_.begin()->second;
  return std::nullopt;
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

const std::pair<const Monomial, Rational>& Poly::leadingTerm() const {
  assert(!terms_.empty());
  return *terms_.rbegin();
}

int Poly::degree(Var v) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree(v));
  return d;
}

int Poly::totalDegree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.totalDegree());
  return d;
}

bool Poly::contains(Var v) const {
  return std::any_of(terms_.begin(), terms_.end(), [v](const auto& t) { return t.first.degree(v) > 0; });
}

std::vector<Var> Poly::variables() const {
  std::set<Var> vs;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) vs.insert(f.first);
  }
  return {vs.begin(), vs.end()};
}

Monomial Poly::monomialContent() const {
  if (terms_.empty()) return {};
  Monomial g = terms_.begin()->first;
  for (const auto& [m, c] : terms_) {
    g = gcd(g, m);
    if (g.isOne()) break;
  }
  return g;
}

void Poly::addTerm(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) addTerm(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) addTerm(m, Rational(-c));
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.terms_.size() > b.terms_.size()) return b * a;
  Poly out;
  if (a.isZero() || b.isZero()) return out;
  if (a.terms_.size() == 1) {
    const auto& [ma, ca] = *a.terms_.begin();
    for (const auto& [mb, cb] : b.terms_) out.terms_.emplace_hint(out.terms_.end(), ma * mb, ca * cb);
    return out;
  }
  // Heap merge of the rows a_i * b, each already sorted because the
  // monomial order is multiplicative; output arrives in increasing order.
  using Term = std::pair<const Monomial, Rational>;
  std::vector<const Term*> rowTerms;
  std::vector<const Term*> colTerms;
  for (const auto& t : a.terms_) rowTerms.push_back(&t);
  for (const auto& t : b.terms_) colTerms.push_back(&t);
  struct Entry {
    Monomial m;
    std::size_t row;
    std::size_t col;
  };
  const MonomialOrder less;
  const auto greater = [&](const Entry& x, const Entry& y) { return less(y.m, x.m); };
  std::vector<Entry> heap;
  heap.reserve(rowTerms.size());
  for (std::size_t i = 0; i < rowTerms.size(); ++i) heap.push_back({rowTerms[i]->first * colTerms[0]->first, i, 0});
  std::make_heap(heap.begin(), heap.end(), greater);
  Rational acc;
  Rational product;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), greater);
    Entry top = std::move(heap.back());
    heap.pop_back();
    mpq_mul(acc.get_mpq_t(), rowTerms[top.row]->second.get_mpq_t(), colTerms[top.col]->second.get_mpq_t());
    const auto advance = [&](Entry& e) {
      if (++e.col < colTerms.size()) {
        e.m = rowTerms[e.row]->first * colTerms[e.col]->first;
        heap.push_back(std::move(e));
        std::push_heap(heap.begin(), heap.end(), greater);
      }
    };
    Monomial current = top.m;
    advance(top);
    while (!heap.empty() && heap.front().m == current) {
      std::pop_heap(heap.begin(), heap.end(), greater);
      Entry next = std::move(heap.back());
      heap.pop_back();
      mpq_mul(product.get_mpq_t(), rowTerms[next.row]->second.get_mpq_t(), colTerms[next.col]->second.get_mpq_t());
      acc += product;
      advance(next);
    }
    if (acc != 0) out.terms_.emplace_hint(out.terms_.end(), std::move(current), acc);
  }
  return out;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly operator-(const Poly& a) {
  Poly out = a;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result(1L);
  Poly base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

Poly Poly::monic() const {
  if (terms_.empty()) return {};
  const Rational lc = leadingCoefficient();
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c /= lc;
  return out;
}

Poly Poly::derivative(Var v) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    const int e = m.degree(v);
    if (e == 0) continue;
    out.addTerm(m.withDegree(v, e - 1), Rational(c * e));
  }
  return out;
}

std::map<int, Poly> Poly::coefficientsIn(Var v) const {
  std::map<int, Poly> out;
  for (const auto& [m, c] : terms_) out[m.degree(v)].addTerm(m.without(v), c);
  return out;
}

Poly Poly::substitute(Var v, const Poly& value) const {
  if (!contains(v)) return *this;
  Poly out;
  std::vector<Poly> powers{Poly(1L)};
  for (const auto& [k, coeff] : coefficientsIn(v)) {
    while (static_cast<int>(powers.size()) <= k) powers.push_back(powers.back() * value);
    out += coeff * powers[static_cast<std::size_t>(k)];
  }
  return out;
}

Poly Poly::substitute(const std::map<Var, Poly>& values) const {
  Poly out;
  std::map<std::pair<Var, int>, Poly> cache;
  for (const auto& [m, c] : terms_) {
    Poly t(c);
    std::vector<Monomial::Factor> kept;
    for (const auto& [v, e] : m.factors()) {
      auto it = values.find(v);
      if (it == values.end()) {
        kept.emplace_back(v, e);
        continue;
      }
      auto [pit, inserted] = cache.try_emplace({v, e});
      if (inserted) pit->second = it->second.pow(static_cast<unsigned>(e));
      t *= pit->second;
    }
    out += t * Poly::term(Rational(1), Monomial::fromFactors(std::move(kept)));
  }
  return out;
}

Rational Poly::evaluate(const std::map<Var, Rational>& values) const {
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m.factors()) {
      auto it = values.find(v);
      if (it == values.end()) throw DomainError("evaluate: no value for " + v.name());
      t *= chainlab::pow(it->second, e);
    }
    total += t;
  }
  return total;
}

Poly Poly::dividedBy(const Monomial& m) const {
  Poly out;
  for (const auto& [mono, c] : terms_) {
    auto q = mono.dividedBy(m);
    if (!q) throw DomainError("monomial division is not exact");
    out.terms_.emplace(std::move(*q), c);
  }
  return out;
}

std::optional<Poly> Poly::dividedBy(const Poly& divisor) const {
  if (divisor.isZero()) throw DomainError("division by the zero polynomial");
  const auto& [lm, lc] = divisor.leadingTerm();
  Poly quotient;
  Poly rest = *this;
  while (!rest.isZero()) {
    const auto& [rm, rc] = rest.leadingTerm();
    auto qm = rm.dividedBy(lm);
    if (!qm) return std::nullopt;
    Poly t = Poly::term(Rational(rc / lc), *qm);
    quotient += t;
    rest -= t * divisor;
  }
  return quotient;
}

std::string Poly::toString() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1 && !m.isOne();
    if (!unit) os << mag.get_str();
    bool firstFactor = unit;
    for (const auto& [v, e] : m.factors()) {
      if (!firstFactor) os << "*";
      firstFactor = false;
      os << v.name();
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

// --------------------------------------------------------------------- GCD

namespace {

Poly gcdImpl(const Poly& a, const Poly& b);

Poly exactQuotient(const Poly& a, const Poly& b) {
  auto q = a.dividedBy(b);
  assert(q.has_value());
  return *q;
}

Poly contentIn(const Poly& p, Var v) {
  Poly g;
  for (const auto& [k, coeff] : p.coefficientsIn(v)) {
    g = gcdImpl(g, coeff);
    if (g.isConstant()) return Poly(1L);
  }
  return g;
}

Poly primitivePart(const Poly& p, Var v) {
  if (p.isZero()) return p;
  return exactQuotient(p, contentIn(p, v)).monic();
}

Poly leadingCoeffIn(const Poly& p, Var v, int degree) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    if (m.degree(v) == degree) out.addTerm(m.without(v), c);
  }
  return out;
}

Poly pseudoRemainder(const Poly& a, const Poly& b, Var v) {
  const int db = b.degree(v);
  const Poly lcb = leadingCoeffIn(b, v, db);
  Poly r = a;
  while (!r.isZero() && r.contains(v) && r.degree(v) >= db) {
    const int dr = r.degree(v);
    const Poly lcr = leadingCoeffIn(r, v, dr);
    r = lcb * r - lcr * Poly::variable(v, dr - db) * b;
  }
  if (!r.isZero() && db == 0) return {};
  return r;
}

Poly gcdPrimitiveFree(const Poly& a, const Poly& b) {
  if (a.isConstant() || b.isConstant()) return Poly(1L);
  const auto va = a.variables();
  const auto vb = b.variables();
  for (Var v : va) {
    if (!b.contains(v)) return gcdImpl(contentIn(a, v), b);
  }
  for (Var v : vb) {
    if (!a.contains(v)) return gcdImpl(a, contentIn(b, v));
  }
  const Var v = va.front();
  const Poly ca = contentIn(a, v);
  const Poly cb = contentIn(b, v);
  Poly pa = exactQuotient(a, ca).monic();
  Poly pb = exactQuotient(b, cb).monic();
  const Poly c = gcdImpl(ca, cb);
  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  while (!pb.isZero()) {
    if (pb.degree(v) == 0) {
      pa = Poly(1L);
      break;
    }
    Poly r = pseudoRemainder(pa, pb, v);
    pa = std::move(pb);
    pb = primitivePart(r, v);
  }
  return (c * primitivePart(pa, v)).monic();
}

Poly gcdImpl(const Poly& a, const Poly& b) {
  if (a.isZero()) return b.monic();
  if (b.isZero()) return a.monic();
  if (a.isConstant() || b.isConstant()) return Poly(1L);
  const Monomial ma = a.monomialContent();
  const Monomial mb = b.monomialContent();
  const Monomial mg = gcd(ma, mb);
  const Poly ra = a.dividedBy(ma);
  const Poly rb = b.dividedBy(mb);
  Poly core(1L);
  if (!ra.isConstant() && !rb.isConstant()) {
    if (auto q = ra.dividedBy(rb)) {
      core = rb;
    } else if (auto q2 = rb.dividedBy(ra)) {
      core = ra;
    } else {
      core = gcdPrimitiveFree(ra, rb);
    }
  }
  return (core * Poly::term(Rational(1), mg)).monic();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) { return gcdImpl(a, b); }

// -------------------------------------------------------------- univariate

namespace univariate {

namespace {

using Dense = std::vector<Rational>;  // Dense[k] = coefficient of v^k

Dense toDense(const Poly& p, Var v) {
  Dense d(static_cast<std::size_t>(p.degree(v)) + 1, Rational(0));
  for (const auto& [m, c] : p.terms()) {
    if (m.totalDegree() != m.degree(v)) throw DomainError("polynomial is not univariate in " + v.name());
    d[static_cast<std::size_t>(m.degree(v))] += c;
  }
  while (d.size() > 1 && d.back() == 0) d.pop_back();
  return d;
}

bool isZeroDense(const Dense& d) { return d.size() == 1 && d[0] == 0; }

Dense remainder(Dense a, const Dense& b) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db && !isZeroDense(a)) {
    const std::size_t da = a.size() - 1;
    const Rational factor = a.back() / b.back();
    for (std::size_t i = 0; i <= db; ++i) a[da - db + i] -= factor * b[i];
    a.pop_back();
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    if (a.empty()) a.push_back(Rational(0));
  }
  return a;
}

Rational evalDense(const Dense& d, const Rational& x) {
  Rational acc(0);
  for (auto it = d.rbegin(); it != d.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int signChanges(const std::vector<Dense>& seq, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& d : seq) {
    const int s = sgn(evalDense(d, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

Poly squarefree(const Poly& p, Var v) {
  if (p.isConstant()) return p;
  const Poly g = gcd(p, p.derivative(v));
  return exactQuotient(p, g).monic();
}

int sturmCount(const Poly& p, Var v, const Rational& lo, const Rational& hi) {
  if (p.isConstant()) return 0;
  std::vector<Dense> seq;
  seq.push_back(toDense(p, v));
  seq.push_back(toDense(p.derivative(v), v));
  while (seq.back().size() > 1) {
    Dense r = remainder(seq[seq.size() - 2], seq.back());
    if (isZeroDense(r)) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  return signChanges(seq, lo) - signChanges(seq, hi);
}

}  // namespace univariate

}  // namespace chainlab
