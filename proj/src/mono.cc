#include "modpairs/mono.hh"

#include <algorithm>

namespace modpairs {

int total_deg(const Exps& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

bool mono_divides(const Exps& a, const Exps& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exps mono_mul(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exps mono_div(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Exps mono_lcm(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool mono_coprime(const Exps& a, const Exps& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

namespace {

int cmp_lex(const Exps& a, const Exps& b, size_t lo, size_t hi) {
  for (size_t i = lo; i < hi; ++i)
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  return 0;
}

// Degree first; ties broken by the last differing exponent, smaller wins.
int cmp_grevlex(const Exps& a, const Exps& b, size_t lo, size_t hi) {
  int da = 0, db = 0;
  for (size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (size_t i = hi; i-- > lo;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

}  // namespace

int MonomialOrder::cmp(const Exps& a, const Exps& b) const {
  switch (kind) {
    case Kind::lex:
      return cmp_lex(a, b, 0, a.size());
    case Kind::grevlex:
      return cmp_grevlex(a, b, 0, a.size());
    case Kind::block: {
      size_t k = size_t(block) < a.size() ? size_t(block) : a.size();
      if (int c = cmp_grevlex(a, b, 0, k)) return c;
      return cmp_grevlex(a, b, k, a.size());
    }
  }
  return 0;
}

std::string MonomialOrder::str() const {
  switch (kind) {
    case Kind::lex:
      return "lex";
    case Kind::grevlex:
      return "grevlex";
    case Kind::block:
      return "block" + std::to_string(block);
  }
  return "?";
}

}  // namespace modpairs
