#include "tmlab/witness.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace tmlab {

std::size_t floor_log2(std::size_t n) { return n <= 1 ? 0 : std::bit_width(n) - 1; }

std::size_t ceil_log2(std::size_t n) { return n <= 1 ? 0 : std::bit_width(n - 1); }

WitnessSizeFn::WitnessSizeFn(std::string description, std::optional<std::string> serialized,
                             std::function<std::size_t(std::size_t)> fn)
    : description_(std::move(description)), serialized_(std::move(serialized)), fn_(std::move(fn)) {}

WitnessSizeFn WitnessSizeFn::constant(std::size_t c) {
  return {std::to_string(c), "const " + std::to_string(c), [c](std::size_t) { return c; }};
}

WitnessSizeFn WitnessSizeFn::affine(std::size_t num, std::size_t den, std::size_t offset) {
  if (den == 0) throw std::invalid_argument("affine witness size: zero denominator");
  std::string label = num == den ? "n" : (den == 1 ? std::to_string(num) + "n"
                                                   : std::to_string(num) + "n/" + std::to_string(den));
  if (num == 0) label = "0";
  if (offset != 0) label += "+" + std::to_string(offset);
  std::ostringstream text;
  text << "affine " << num << ' ' << den << ' ' << offset;
  return {label, text.str(), [=](std::size_t n) { return num * n / den + offset; }};
}

WitnessSizeFn WitnessSizeFn::floor_lg(std::size_t offset) {
  std::string label = "floor(lg n)" + (offset ? "+" + std::to_string(offset) : std::string{});
  return {label, "floor_lg " + std::to_string(offset),
          [offset](std::size_t n) { return floor_log2(n) + offset; }};
}

WitnessSizeFn WitnessSizeFn::ceil_lg(std::size_t offset) {
  std::string label = "ceil(lg n)" + (offset ? "+" + std::to_string(offset) : std::string{});
  return {label, "ceil_lg " + std::to_string(offset),
          [offset](std::size_t n) { return ceil_log2(n) + offset; }};
}

WitnessSizeFn WitnessSizeFn::custom(std::string label, std::function<std::size_t(std::size_t)> fn) {
  return {std::move(label), std::nullopt, std::move(fn)};
}

WitnessSizeFn WitnessSizeFn::composed(const WitnessSizeFn& f, const WitnessSizeFn& g) {
  std::string label = "[" + f.description() + "," + g.description() + "]";
  return {label, std::nullopt, [f, g](std::size_t n) {
            std::size_t gn = g(n);
            return gn + f(n + gn);
          }};
}

WitnessSizeFn WitnessSizeFn::parse(const std::string& text) {
  std::istringstream in(text);
  std::string kind;
  in >> kind;
  auto number = [&]() {
    long long v = -1;
    if (!(in >> v) || v < 0) throw std::invalid_argument("bad witness size function: " + text);
    return static_cast<std::size_t>(v);
  };
  WitnessSizeFn result = constant(0);
  if (kind == "const") {
    result = constant(number());
  } else if (kind == "affine") {
    std::size_t a = number(), b = number(), c = number();
    result = affine(a, b, c);
  } else if (kind == "floor_lg") {
    result = floor_lg(number());
  } else if (kind == "ceil_lg") {
    result = ceil_lg(number());
  } else {
    throw std::invalid_argument("bad witness size function: " + text);
  }
  std::string rest;
  if (in >> rest) throw std::invalid_argument("bad witness size function: " + text);
  return result;
}

bool WitnessSizeFn::agrees_with(const WitnessSizeFn& other, std::size_t up_to) const {
  for (std::size_t n = 0; n <= up_to; ++n)
    if ((*this)(n) != other(n)) return false;
  return true;
}

}  // namespace tmlab
