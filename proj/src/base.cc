#include "modpairs/base.hh"

#include <algorithm>

namespace modpairs {

SigPtr make_sig(std::vector<std::string> vars) {
  return std::make_shared<const Sig>(std::move(vars));
}

bool sig_eq(const SigPtr& a, const SigPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

size_t sig_index(const Sig& sig, const std::string& name) {
  auto it = std::find(sig.begin(), sig.end(), name);
  return it == sig.end() ? std::string::npos : size_t(it - sig.begin());
}

std::string fresh_name(const Sig& sig, const std::string& base) {
  if (sig_index(sig, base) == std::string::npos) return base;
  for (int k = 0;; ++k) {
    std::string cand = base + std::to_string(k);
    if (sig_index(sig, cand) == std::string::npos) return cand;
  }
}

ParseError::ParseError(const std::string& what, size_t line_, size_t col_)
    : std::runtime_error(what + " at " + std::to_string(line_) + ":" +
                         std::to_string(col_)),
      line(line_),
      col(col_) {}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::logic_error(msg);
}

}  // namespace modpairs
