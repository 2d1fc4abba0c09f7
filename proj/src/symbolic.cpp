#include "bloch/symbolic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bloch {

ParamMonomial ParamMonomial::symbol(const std::string& name) {
  if (name.empty()) throw error("parameter symbol must be nonempty");
  ParamMonomial m;
  m.fac_.emplace_back(name, 1);
  return m;
}

ParamMonomial ParamMonomial::operator*(const ParamMonomial& o) const {
  ParamMonomial out;
  auto a = fac_.begin(), b = o.fac_.begin();
  while (a != fac_.end() || b != o.fac_.end()) {
    if (b == o.fac_.end() || (a != fac_.end() && a->first < b->first)) {
      out.fac_.push_back(*a++);
    } else if (a == fac_.end() || b->first < a->first) {
      out.fac_.push_back(*b++);
    } else {
      out.fac_.emplace_back(a->first, a->second + b->second);
      ++a, ++b;
    }
  }
  return out;
}

int ParamMonomial::degree() const {
  int d = 0;
  for (auto& [_, e] : fac_) d += e;
  return d;
}

Rat ParamMonomial::eval(const std::map<std::string, Rat>& vals) const {
  Rat r = 1;
  for (auto& [name, e] : fac_) {
    auto it = vals.find(name);
    if (it == vals.end()) throw error("unknown parameter symbol '" + name + "'");
    for (int k = 0; k < e; ++k) r *= it->second;
  }
  return r;
}

void ParamMonomial::collect_symbols(std::set<std::string>& out) const {
  for (auto& [name, _] : fac_) out.insert(name);
}

std::string ParamMonomial::str() const {
  if (fac_.empty()) return "1";
  std::string s;
  for (auto& [name, e] : fac_) {
    if (!s.empty()) s += "*";
    s += name;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

ParamPoly ParamPoly::constant(Int c) {
  ParamPoly p;
  if (c != 0) p.terms_[ParamMonomial()] = std::move(c);
  return p;
}

ParamPoly ParamPoly::symbol(const std::string& name) {
  return term(ParamMonomial::symbol(name), 1);
}

ParamPoly ParamPoly::term(const ParamMonomial& m, Int c) {
  ParamPoly p;
  if (c != 0) p.terms_[m] = std::move(c);
  return p;
}

ParamPoly ParamPoly::operator+(const ParamPoly& o) const {
  ParamPoly out = *this;
  for (auto& [m, c] : o.terms_) {
    auto [it, fresh] = out.terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

ParamPoly ParamPoly::operator-(const ParamPoly& o) const { return *this + (-o); }

ParamPoly ParamPoly::operator-() const {
  ParamPoly out = *this;
  for (auto& [_, c] : out.terms_) c = -c;
  return out;
}

ParamPoly ParamPoly::operator*(const ParamPoly& o) const {
  ParamPoly out;
  for (auto& [ma, ca] : terms_)
    for (auto& [mb, cb] : o.terms_) {
      ParamMonomial m = ma * mb;
      auto [it, fresh] = out.terms_.emplace(m, ca * cb);
      if (!fresh) {
        it->second += ca * cb;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  return out;
}

ParamPoly ParamPoly::operator*(const Int& c) const {
  if (c == 0) return {};
  ParamPoly out = *this;
  for (auto& [_, v] : out.terms_) v *= c;
  return out;
}

std::optional<std::pair<ParamMonomial, Int>> ParamPoly::single_term() const {
  if (terms_.size() != 1) return std::nullopt;
  return *terms_.begin();
}

Rat ParamPoly::eval(const std::map<std::string, Rat>& vals) const {
  Rat r = 0;
  for (auto& [m, c] : terms_) r += Rat(c) * m.eval(vals);
  return r;
}

void ParamPoly::collect_symbols(std::set<std::string>& out) const {
  for (auto& [m, _] : terms_) m.collect_symbols(out);
}

std::string ParamPoly::str() const {
  if (terms_.empty()) return "0";
  // Display order: total degree descending, then monomial ascending.
  std::vector<const std::pair<const ParamMonomial, Int>*> ts;
  for (auto& t : terms_) ts.push_back(&t);
  std::stable_sort(ts.begin(), ts.end(), [](auto* a, auto* b) {
    int da = a->first.degree(), db = b->first.degree();
    if (da != db) return da > db;
    return a->first < b->first;
  });
  std::string s;
  for (auto* t : ts) {
    const Int& c = t->second;
    bool neg = c < 0;
    Int mag = abs(c);
    std::string body;
    if (mag != 1 || t->first.is_one()) body = mag.get_str();
    if (!t->first.is_one()) {
      if (!body.empty()) body += "*";
      body += t->first.str();
    }
    if (s.empty())
      s = (neg ? "-" : "") + body;
    else
      s += (neg ? " - " : " + ") + body;
  }
  return s;
}

ExpVec exp_add(const ExpVec& a, const ExpVec& b) {
  ExpVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

ExpVec exp_neg(const ExpVec& a) {
  ExpVec r = a;
  for (auto& v : r) v = -v;
  return r;
}

long long exp_dot(const std::vector<int>& eta, const ExpVec& e) {
  long long s = 0;
  for (size_t i = 0; i < e.size(); ++i) s += (long long)eta[i] * e[i];
  return s;
}

LaurentPoly::LaurentPoly(int nvars) : nvars_(nvars) {
  if (nvars < 1 || nvars > 4) throw error("laurent polynomial needs 1..4 variables");
}

LaurentPoly LaurentPoly::term(const ExpVec& e, const ParamPoly& c) {
  LaurentPoly p((int)e.size());
  if (!c.is_zero()) p.terms_[e] = c;
  return p;
}

std::vector<ExpVec> LaurentPoly::support() const {
  std::vector<ExpVec> out;
  for (auto& [e, _] : terms_) out.push_back(e);
  return out;
}

ParamPoly LaurentPoly::coeff(const ExpVec& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? ParamPoly() : it->second;
}

void LaurentPoly::insert(const ExpVec& e, const ParamPoly& c) {
  if ((int)e.size() != nvars_) throw error("exponent arity mismatch");
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  if (nvars_ != o.nvars_) throw error("variable count mismatch");
  LaurentPoly out = *this;
  for (auto& [e, c] : o.terms_) out.insert(e, c);
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [_, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (nvars_ != o.nvars_) throw error("variable count mismatch");
  LaurentPoly out(nvars_);
  for (auto& [ea, ca] : terms_)
    for (auto& [eb, cb] : o.terms_) out.insert(exp_add(ea, eb), ca * cb);
  return out;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  return nvars_ == o.nvars_ && terms_ == o.terms_;
}

LaurentPoly LaurentPoly::log_derivative(int var) const {
  if (var < 0 || var >= nvars_) throw error("log_derivative: variable out of range");
  LaurentPoly out(nvars_);
  for (auto& [e, c] : terms_) out.insert(e, c * Int(e[var]));
  return out;
}

std::pair<LaurentPoly, long long> LaurentPoly::initial_form(const std::vector<int>& eta) const {
  if ((int)eta.size() != nvars_) throw error("initial_form: direction arity mismatch");
  if (terms_.empty()) throw error("initial_form of the zero polynomial");
  long long r = 0;
  bool first = true;
  for (auto& [e, _] : terms_) {
    long long v = exp_dot(eta, e);
    if (first || v < r) r = v, first = false;
  }
  LaurentPoly out(nvars_);
  for (auto& [e, c] : terms_)
    if (exp_dot(eta, e) == r) out.terms_[e] = c;
  return {out, r};
}

LaurentPoly LaurentPoly::invert_z() const {
  LaurentPoly out(nvars_);
  for (auto& [e, c] : terms_) {
    ExpVec f = e;
    for (int i = 0; i + 1 < nvars_; ++i) f[i] = -f[i];
    out.terms_[f] = c;
  }
  return out;
}

LaurentPoly LaurentPoly::shift(const ExpVec& base) const {
  LaurentPoly out(nvars_);
  for (auto& [e, c] : terms_) out.terms_[exp_add(e, exp_neg(base))] = c;
  return out;
}

Cplx cpow(Cplx base, int e) {
  if (e == 0) return {1.0, 0.0};
  bool inv = e < 0;
  if (inv && std::abs(base) == 0.0) throw error("negative power of zero");
  unsigned k = inv ? -(long long)e : e;
  Cplx acc{1.0, 0.0};
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return inv ? 1.0 / acc : acc;
}

Cplx LaurentPoly::eval(const std::map<std::string, Rat>& params,
                       const std::vector<Cplx>& point) const {
  if ((int)point.size() != nvars_) throw error("eval: point arity mismatch");
  Cplx acc{0.0, 0.0};
  for (auto& [e, c] : terms_) {
    Cplx t{c.eval(params).get_d(), 0.0};
    for (int i = 0; i < nvars_; ++i) t *= cpow(point[i], e[i]);
    acc += t;
  }
  return acc;
}

void LaurentPoly::collect_symbols(std::set<std::string>& out) const {
  for (auto& [_, c] : terms_) c.collect_symbols(out);
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  static const char* zname[3] = {"x", "y", "z"};
  auto expmono = [&](const ExpVec& e) {
    std::string s;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += (i + 1 < nvars_) ? zname[i] : "lambda";
      if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
    return s;
  };
  // lambda-degree descending, then momentum exponents ascending.
  std::vector<const std::pair<const ExpVec, ParamPoly>*> ts;
  for (auto& t : terms_) ts.push_back(&t);
  std::stable_sort(ts.begin(), ts.end(), [](auto* a, auto* b) {
    int ja = a->first.back(), jb = b->first.back();
    if (ja != jb) return ja > jb;
    return a->first < b->first;
  });
  std::string s;
  for (auto* t : ts) {
    std::string mono = expmono(t->first);
    auto single = t->second.single_term();
    bool neg = false;
    std::string body;
    if (single) {
      const auto& [m, c] = *single;
      neg = c < 0;
      Int mag = abs(c);
      if (mag != 1 || (m.is_one() && mono.empty())) body = mag.get_str();
      if (!m.is_one()) {
        if (!body.empty()) body += "*";
        body += m.str();
      }
      if (!mono.empty()) {
        if (!body.empty()) body += "*";
        body += mono;
      }
    } else {
      body = "(" + t->second.str() + ")";
      if (!mono.empty()) body += "*" + mono;
    }
    if (s.empty())
      s = (neg ? "-" : "") + body;
    else
      s += (neg ? " - " : " + ") + body;
  }
  return s;
}

SymbolicMatrix::SymbolicMatrix(int n, int nvars)
    : n_(n), nvars_(nvars), e_(n * n, LaurentPoly(nvars)) {
  if (n < 1) throw error("matrix size must be positive");
}

LaurentPoly& SymbolicMatrix::at(int i, int j) { return e_[i * n_ + j]; }
const LaurentPoly& SymbolicMatrix::at(int i, int j) const { return e_[i * n_ + j]; }

LaurentPoly leibniz_det(const SymbolicMatrix& m) {
  int n = m.size();
  if (n > 8) throw error("leibniz_det limited to 8x8 matrices");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  LaurentPoly det(m.nvars());
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    LaurentPoly prod = LaurentPoly::term(ExpVec(m.nvars(), 0), ParamPoly::one());
    bool dead = false;
    for (int i = 0; i < n && !dead; ++i) {
      if (m.at(i, perm[i]).is_zero())
        dead = true;
      else
        prod = prod * m.at(i, perm[i]);
    }
    if (!dead) det = (inv % 2) ? det - prod : det + prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

LaurentPoly euler_pairing(const LaurentPoly& f, const std::vector<int>& eta_a) {
  if (f.is_zero()) return f;
  auto [_, r] = f.initial_form(eta_a);
  LaurentPoly out(f.nvars());
  for (auto& [e, c] : f.terms()) {
    Int mult((long)(exp_dot(eta_a, e) - r));
    out = out + LaurentPoly::term(e, c * mult);
  }
  return out;
}

std::string rat_str(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_str();
}

}  // namespace bloch
