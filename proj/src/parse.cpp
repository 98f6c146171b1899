#include "fdet/parse.hpp"

#include <algorithm>
#include <cctype>

#include "fdet/detail/expr_parser.hpp"

namespace fdet {

namespace {

// 0-based variable index for a name, or nothing when it is not a variable.
std::optional<std::size_t> variable_index(std::string_view name) {
  if (name == "x" || name == "z") return 0;
  if (name == "y") return 1;
  if (name == "w") return 2;
  if (name.size() >= 2 && name[0] == 'z' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const long k = std::stol(std::string(name.substr(1)));
    if (k >= 1) return static_cast<std::size_t>(k - 1);
  }
  return std::nullopt;
}

struct JetRing {
  std::size_t n_vars;
  unsigned trunc;

  Jet scalar(const QComplex& c) const { return Jet::constant(n_vars, trunc, c); }

  Jet identifier(std::string_view name, std::optional<long> arg) const {
    auto idx = variable_index(name);
    if (!idx || arg) throw ParseError("unknown identifier");
    if (*idx >= n_vars) throw ParseError("variable index exceeds n_vars");
    return Jet::variable(n_vars, trunc, *idx);
  }

  std::optional<QComplex> as_scalar(const Jet& j) const {
    if (j.is_zero()) return QComplex{};
    if (j.degree() == 0) return j.coeff(Exponent(n_vars, 0));
    return std::nullopt;
  }
};

}  // namespace

std::size_t count_variables(std::string_view text) {
  std::size_t n = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (!std::isalpha(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (auto idx = variable_index(text.substr(start, pos - start))) n = std::max(n, *idx + 1);
  }
  return n;
}

Jet parse_jet(std::string_view text, std::size_t n_vars, unsigned trunc) {
  JetRing ring{n_vars == 0 ? count_variables(text) : n_vars, trunc};
  detail::ExprParser<JetRing> parser(text, ring);
  return parser.parse();
}

}  // namespace fdet
