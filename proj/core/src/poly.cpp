#include "acsv/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace acsv {

bool GradedLex::operator()(const Exponent& a, const Exponent& b) const {
  const unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  const unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da < db;
  return a < b;
}

VarRoster::VarRoster(std::vector<std::string> names) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw std::invalid_argument("empty variable name");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate variable name: " + n);
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::size_t VarRoster::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return i;
  return names_->size();
}

SparsePoly::SparsePoly(VarRoster roster, TermMap terms) : roster_(std::move(roster)) {
  for (auto& [e, c] : terms) add_term(e, c);
}

SparsePoly SparsePoly::constant(VarRoster roster, const mpq_class& c) {
  SparsePoly p(std::move(roster));
  p.add_term(Exponent(p.nvars(), 0), c);
  return p;
}

SparsePoly SparsePoly::variable(VarRoster roster, std::size_t index) {
  SparsePoly p(std::move(roster));
  if (index >= p.nvars()) throw std::out_of_range("variable index out of range");
  Exponent e(p.nvars(), 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

SparsePoly SparsePoly::monomial(VarRoster roster, Exponent e, const mpq_class& c) {
  SparsePoly p(std::move(roster));
  p.add_term(e, c);
  return p;
}

void SparsePoly::add_term(const Exponent& e, const mpq_class& c) {
  if (e.size() != nvars()) throw std::invalid_argument("exponent length does not match roster");
  if (sgn(c) == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

void SparsePoly::check_same_roster(const SparsePoly& o) const {
  if (!(roster_ == o.roster_)) throw std::invalid_argument("polynomials over different rosters");
}

bool SparsePoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

int SparsePoly::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.rbegin()->first;
  return static_cast<int>(std::accumulate(e.begin(), e.end(), 0u));
}

int SparsePoly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

mpq_class SparsePoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

mpq_class SparsePoly::constant_term() const { return coeff(Exponent(nvars(), 0)); }

const std::pair<const Exponent, mpq_class>& SparsePoly::leading_term() const {
  if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
  return *terms_.rbegin();
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  check_same_roster(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  check_same_roster(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  a.check_same_roster(b);
  SparsePoly r(a.roster_);
  Exponent e(a.nvars());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

SparsePoly& SparsePoly::operator*=(const SparsePoly& o) { return *this = *this * o; }

SparsePoly& SparsePoly::operator*=(const mpq_class& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coef] : terms_) coef *= c;
  return *this;
}

SparsePoly SparsePoly::pow(unsigned k) const {
  SparsePoly result = constant(roster_, 1);
  SparsePoly base = *this;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return result;
}

SparsePoly SparsePoly::embed(const VarRoster& target, std::span<const std::size_t> index_map) const {
  if (index_map.size() != nvars()) throw std::invalid_argument("embed: index map size mismatch");
  SparsePoly r(target);
  Exponent e(target.size());
  for (const auto& [src, c] : terms_) {
    std::fill(e.begin(), e.end(), 0u);
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (index_map[i] >= target.size()) throw std::out_of_range("embed: target index out of range");
      e[index_map[i]] += src[i];
    }
    r.add_term(e, c);
  }
  return r;
}

namespace {

void append_monomial(std::ostringstream& os, const VarRoster& roster, const Exponent& e) {
  bool first = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << roster.name(i);
    if (e[i] > 1) os << '^' << e[i];
  }
}

}  // namespace

// Ascending total degree; within a degree, the first roster variable leads.
std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Exponent, mpq_class>*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
    const unsigned da = std::accumulate(a->first.begin(), a->first.end(), 0u);
    const unsigned db = std::accumulate(b->first.begin(), b->first.end(), 0u);
    if (da != db) return da < db;
    return a->first > b->first;
  });

  std::ostringstream os;
  bool first = true;
  for (const auto* t : order) {
    const auto& [e, c] = *t;
    const bool is_const = std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
    mpq_class mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (is_const) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      append_monomial(os, roster_, e);
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const SparsePoly& p) { return os << p.to_string(); }

namespace {

template <class T, class Mul, class Add>
T eval_generic(const SparsePoly& p, std::span<const T> point, T zero, T one, Mul mul, Add add,
               auto from_rational) {
  if (point.size() != p.nvars()) throw std::invalid_argument("eval: dimension mismatch");
  // Power tables up to the degree needed in each coordinate.
  std::vector<std::vector<T>> powers(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    const int deg = std::max(0, p.degree_in(i));
    powers[i].reserve(deg + 1);
    powers[i].push_back(one);
    for (int k = 1; k <= deg; ++k) powers[i].push_back(mul(powers[i].back(), point[i]));
  }
  T acc = zero;
  for (const auto& [e, c] : p.terms()) {
    T term = from_rational(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) term = mul(term, powers[i][e[i]]);
    acc = add(acc, term);
  }
  return acc;
}

}  // namespace

mpq_class eval(const SparsePoly& p, std::span<const mpq_class> point) {
  return eval_generic<mpq_class>(
      p, point, mpq_class(0), mpq_class(1),
      [](const mpq_class& a, const mpq_class& b) { return mpq_class(a * b); },
      [](const mpq_class& a, const mpq_class& b) { return mpq_class(a + b); },
      [](const mpq_class& c) { return c; });
}

QComplex eval(const SparsePoly& p, std::span<const QComplex> point) {
  auto mul = [](const QComplex& a, const QComplex& b) {
    return QComplex{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  };
  auto add = [](const QComplex& a, const QComplex& b) { return QComplex{a.re + b.re, a.im + b.im}; };
  return eval_generic<QComplex>(p, point, QComplex{0, 0}, QComplex{1, 0}, mul, add,
                                [](const mpq_class& c) { return QComplex{c, 0}; });
}

std::complex<double> eval(const SparsePoly& p, std::span<const std::complex<double>> point) {
  using C = std::complex<double>;
  return eval_generic<C>(
      p, point, C(0), C(1), [](const C& a, const C& b) { return a * b; },
      [](const C& a, const C& b) { return a + b; },
      [](const mpq_class& c) { return C(c.get_d(), 0.0); });
}

SparsePoly partial(const SparsePoly& p, std::size_t var) {
  if (var >= p.nvars()) throw std::out_of_range("partial: variable index out of range");
  PolyBuilder b(p.roster());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    b.add(d, c * e[var]);
  }
  return std::move(b).build();
}

VarRoster split_roster(const VarRoster& roster) {
  std::vector<std::string> names;
  for (const auto& n : roster.names()) names.push_back(n + "_re");
  for (const auto& n : roster.names()) names.push_back(n + "_im");
  return VarRoster(std::move(names));
}

namespace {

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

// (u + i v)^e = sum_k C(e,k) u^(e-k) (i v)^k; i^k cycles through 1, i, -1, -i.
ReImPair re_im_split(const SparsePoly& p) {
  const std::size_t d = p.nvars();
  VarRoster roster = split_roster(p.roster());

  // Expansion of each (u_j + i v_j)^k as a complex-coefficient polynomial, kept
  // as a list of (exponent over 2d vars, re coeff, im coeff).
  struct CTerm {
    Exponent e;
    mpq_class re, im;
  };

  ReImPair out{SparsePoly(roster), SparsePoly(roster)};
  PolyBuilder re_b(roster), im_b(roster);
  for (const auto& [e, c] : p.terms()) {
    std::vector<CTerm> acc{{Exponent(2 * d, 0), c, 0}};
    for (std::size_t j = 0; j < d; ++j) {
      if (e[j] == 0) continue;
      std::vector<CTerm> next;
      for (const auto& t : acc) {
        for (unsigned k = 0; k <= e[j]; ++k) {
          mpq_class b(binomial(e[j], k));
          CTerm n{t.e, 0, 0};
          n.e[j] += e[j] - k;
          n.e[d + j] += k;
          // multiply (t.re + i t.im) by b * i^k
          switch (k % 4) {
            case 0: n.re = t.re * b; n.im = t.im * b; break;
            case 1: n.re = -t.im * b; n.im = t.re * b; break;
            case 2: n.re = -t.re * b; n.im = -t.im * b; break;
            default: n.re = t.im * b; n.im = -t.re * b; break;
          }
          next.push_back(std::move(n));
        }
      }
      acc = std::move(next);
    }
    for (const auto& t : acc) {
      re_b.add(t.e, t.re);
      im_b.add(t.e, t.im);
    }
  }
  out.re = std::move(re_b).build();
  out.im = std::move(im_b).build();
  return out;
}

unsigned coefficient_height_bits(const SparsePoly& p) {
  mpz_class lcm_den = 1;
  for (const auto& [e, c] : p.terms()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  std::size_t bits = 1;
  for (const auto& [e, c] : p.terms()) {
    mpz_class scaled = c.get_num() * (lcm_den / c.get_den());
    bits = std::max(bits, mpz_sizeinbase(scaled.get_mpz_t(), 2));
  }
  return static_cast<unsigned>(bits);
}

RationalGF::RationalGF(SparsePoly g, SparsePoly h) : numer(std::move(g)), denom(std::move(h)) {
  if (!(numer.roster() == denom.roster()))
    throw std::invalid_argument("numerator and denominator use different variable rosters");
  if (sgn(denom.constant_term()) == 0)
    throw std::invalid_argument("denominator vanishes at the origin; no power series expansion");
}

Direction::Direction(std::vector<long> r) : r_(std::move(r)) {
  for (long v : r_)
    if (v <= 0) throw std::invalid_argument("direction entries must be positive integers");
}

Direction Direction::parse(std::string_view text) {
  std::vector<long> r;
  std::string item;
  std::istringstream is{std::string(text)};
  while (std::getline(is, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed direction entry '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw std::invalid_argument("malformed direction entry '" + item + "'");
    r.push_back(v);
  }
  if (r.empty()) throw std::invalid_argument("empty direction");
  return Direction(std::move(r));
}

long Direction::sum() const { return std::accumulate(r_.begin(), r_.end(), 0L); }

}  // namespace acsv
