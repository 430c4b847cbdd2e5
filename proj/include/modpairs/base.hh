#pragma once
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace modpairs {

// Ordered variable names of a polynomial ring. Shared, never mutated.
using Sig = std::vector<std::string>;
using SigPtr = std::shared_ptr<const Sig>;

SigPtr make_sig(std::vector<std::string> vars);
bool sig_eq(const SigPtr& a, const SigPtr& b);
size_t sig_index(const Sig& sig, const std::string& name);  // npos when absent
std::string fresh_name(const Sig& sig, const std::string& base);

struct ParseError : std::runtime_error {
  size_t line, col;
  ParseError(const std::string& what, size_t line, size_t col);
};

void require(bool ok, const std::string& msg);  // std::logic_error on violation

}  // namespace modpairs
