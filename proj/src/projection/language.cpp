#include "tmlab/language.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include "tmlab/errors.hpp"

namespace tmlab {

namespace {

void check_words(std::size_t max_len, const std::set<std::string>& words) {
  for (const std::string& w : words) {
    if (w.size() > max_len)
      throw std::invalid_argument("word '" + w + "' is longer than max_len");
    if (w.find_first_not_of("01") != std::string::npos)
      throw std::invalid_argument("word '" + w + "' is not a bit string");
  }
}

}  // namespace

FiniteLanguage::FiniteLanguage(std::size_t max_len, std::set<std::string> words)
    : max_len_(max_len), domain_(max_len + 1, true), words_(std::move(words)) {
  check_words(max_len_, words_);
}

FiniteLanguage::FiniteLanguage(std::size_t max_len, std::vector<bool> domain,
                               std::set<std::string> words)
    : max_len_(max_len), domain_(std::move(domain)), words_(std::move(words)) {
  domain_.resize(max_len_ + 1, false);
  check_words(max_len_, words_);
  for (const std::string& w : words_)
    if (!domain_[w.size()]) throw std::invalid_argument("word '" + w + "' outside the domain");
}

std::vector<std::string> FiniteLanguage::words_of_length(std::size_t len) const {
  std::vector<std::string> out;
  for (const std::string& w : words_)
    if (w.size() == len) out.push_back(w);
  return out;
}

FiniteLanguage project(const FiniteLanguage& l, const WitnessSizeFn& w, std::size_t cap) {
  std::vector<bool> domain(l.max_len() + 1, false);
  std::size_t new_max = 0;
  for (std::size_t len = 0; len <= l.max_len(); ++len) {
    const std::size_t wl = w(len);
    if (len + wl > l.max_len() || !l.defined(len + wl)) continue;
    if (wl > cap)
      throw CapExceeded("projection needs " + std::to_string(wl) + " witness bits at length " +
                        std::to_string(len) + ", cap is " + std::to_string(cap));
    domain[len] = true;
    new_max = len;
  }
  std::set<std::string> words;
  for (const std::string& word : l.words()) {
    // A word of length m is <x,y> for every x-length len with len + w(len) = m.
    for (std::size_t len = 0; len <= word.size(); ++len)
      if (domain[len] && len + w(len) == word.size()) words.insert(word.substr(0, len));
  }
  domain.resize(new_max + 1);
  return FiniteLanguage(new_max, std::move(domain), std::move(words));
}

FiniteLanguage project_composed(const FiniteLanguage& l, const WitnessSizeFn& f,
                                const WitnessSizeFn& g, std::size_t cap) {
  return project(project(l, f, cap), g, cap);
}

bool composition_identity_check(const FiniteLanguage& l, const WitnessSizeFn& f,
                                const WitnessSizeFn& g, std::size_t cap) {
  return project_composed(l, f, g, cap) == project(l, WitnessSizeFn::composed(f, g), cap);
}

std::vector<std::string> all_words(std::size_t len) {
  if (len >= 63) throw CapExceeded("word length too large to enumerate");
  std::vector<std::string> out;
  out.reserve(std::size_t{1} << len);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
    std::string s(len, '0');
    for (std::size_t i = 0; i < len; ++i)
      if ((v >> (len - 1 - i)) & 1u) s[i] = '1';
    out.push_back(std::move(s));
  }
  return out;
}

FiniteLanguage all_words_language(std::size_t len) {
  std::vector<std::string> w = all_words(len);
  return FiniteLanguage(len, std::set<std::string>(w.begin(), w.end()));
}

FiniteLanguage random_language(std::mt19937_64& rng, std::size_t max_len, double density) {
  std::bernoulli_distribution coin(density);
  std::set<std::string> words;
  for (std::size_t len = 0; len <= max_len; ++len)
    for (std::string& w : all_words(len))
      if (coin(rng)) words.insert(std::move(w));
  return FiniteLanguage(max_len, std::move(words));
}

FiniteLanguage read_language(std::istream& in, std::size_t max_len) {
  std::set<std::string> words;
  std::size_t longest = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) break;
    if (line == "eps") line.clear();
    else if (line.find_first_not_of("01") != std::string::npos)
      throw ParseError("line " + std::to_string(line_no) + ": not a bit string: '" + line + "'");
    longest = std::max(longest, line.size());
    words.insert(line);
  }
  if (max_len == 0) max_len = longest;
  if (longest > max_len) throw ParseError("word longer than the requested max_len");
  return FiniteLanguage(max_len, std::move(words));
}

void write_language(std::ostream& out, const FiniteLanguage& l) {
  for (const std::string& w : l.words()) out << (w.empty() ? "eps" : w) << '\n';
  out << '\n';
}

}  // namespace tmlab
