#pragma once

// Line-oriented network DSL.
//
//   # comment
//   theta A = linear | capped(2) | table(1, 2, 2) [saturating|growing]
//   A + B <-> 2C ; 1, 1
//   0 -> A ; 1
//
// Species are numbered by first appearance in a reaction line; complexes by
// first appearance; reactions in the order written ("<->" yields the forward
// reaction followed by the reverse one).

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crn/kinetics.hpp"
#include "crn/network.hpp"

namespace crn {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct ParsedModel {
  ReactionNetwork network;
  KineticsSpec kinetics;
};

inline constexpr std::int64_t kMaxStoichiometricCoefficient = 1'000'000;

namespace detail {

class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool consume(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token, const char* what) {
    if (!consume(token)) fail(std::string("expected ") + what);
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, pos_ + 1, what); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& what) const { throw ParseError(line_, pos + 1, what); }
  std::size_t pos() const { return pos_; }

  std::optional<std::string> identifier() {
    skip_ws();
    std::size_t p = pos_;
    if (p >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[p])) || text_[p] == '_'))
      return std::nullopt;
    while (p < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[p])) || text_[p] == '_')) ++p;
    std::string out(text_.substr(pos_, p - pos_));
    pos_ = p;
    return out;
  }

  std::optional<std::int64_t> integer() {
    skip_ws();
    std::size_t p = pos_;
    while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
    if (p == pos_) return std::nullopt;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + p, v);
    if (ec != std::errc() || v > kMaxStoichiometricCoefficient)
      fail("stoichiometric coefficient exceeds " + std::to_string(kMaxStoichiometricCoefficient));
    pos_ = p;
    return v;
  }

  double real() {
    skip_ws();
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("expected a number");
    const std::size_t start = pos_;
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    if (!std::isfinite(v)) fail_at(start, "rate must be finite");
    return v;
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct RawTerm {
  std::int64_t coeff;
  std::string species;
};

inline std::vector<RawTerm> parse_complex(LineCursor& cur) {
  std::vector<RawTerm> terms;
  // A bare "0" is the zero complex; "0A" is rejected below as a zero coefficient.
  {
    LineCursor probe = cur;
    if (auto v = probe.integer(); v && *v == 0 && !probe.identifier()) {
      cur = probe;
      return terms;
    }
  }
  while (true) {
    const std::size_t start = (cur.skip_ws(), cur.pos());
    std::int64_t coeff = 1;
    if (auto v = cur.integer()) {
      if (*v == 0) cur.fail_at(start, "coefficient must be positive");
      coeff = *v;
    }
    auto name = cur.identifier();
    if (!name) cur.fail("expected a species name");
    terms.push_back({coeff, *name});
    if (!cur.consume("+")) break;
  }
  return terms;
}

inline Theta parse_theta(LineCursor& cur) {
  const std::size_t start = (cur.skip_ws(), cur.pos());
  auto name = cur.identifier();
  if (!name) cur.fail("expected a theta name");
  if (*name == "linear") return Theta::linear();
  if (*name == "capped") {
    cur.expect("(", "'('");
    const double cap = cur.real();
    cur.expect(")", "')'");
    if (!(cap > 0)) cur.fail_at(start, "capped theta needs a positive cap");
    return Theta::capped(cap);
  }
  if (*name == "table") {
    cur.expect("(", "'('");
    std::vector<double> values{cur.real()};
    while (cur.consume(",")) values.push_back(cur.real());
    cur.expect(")", "')'");
    bool linear_tail = false;
    if (auto mode = cur.identifier()) {
      if (*mode == "growing") linear_tail = true;
      else if (*mode != "saturating") cur.fail("expected 'saturating' or 'growing'");
    }
    try {
      return Theta::tabulated(std::move(values), linear_tail);
    } catch (const KineticsError& e) {
      cur.fail_at(start, e.what());
    }
  }
  cur.fail_at(start, "unknown theta name '" + *name + "'");
}

}  // namespace detail

/// Parses the DSL into a validated network plus its rate constants.
inline ParsedModel parse_network(std::string_view text) {
  std::vector<std::string> species;
  std::vector<Complex> complexes;
  std::vector<Reaction> reactions;
  std::vector<double> kappa;
  struct PendingTheta {
    std::string species;
    Theta theta;
    std::size_t line, column;
  };
  std::vector<PendingTheta> thetas;

  auto species_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < species.size(); ++i)
      if (species[i] == name) return i;
    species.push_back(name);
    for (auto& c : complexes) c.coeffs.push_back(0);
    return species.size() - 1;
  };
  auto complex_index = [&](const std::vector<detail::RawTerm>& terms) {
    for (const auto& t : terms) species_index(t.species);
    Complex c{IntVector(species.size(), 0)};
    for (const auto& t : terms) {
      auto& slot = c.coeffs[species_index(t.species)];
      slot += t.coeff;
    }
    for (std::size_t j = 0; j < complexes.size(); ++j)
      if (complexes[j] == c) return j;
    complexes.push_back(std::move(c));
    return complexes.size() - 1;
  };

  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;

    detail::LineCursor cur(line, line_no);
    if (cur.at_end() || cur.peek() == '#') {
      if (end == text.size()) break;
      continue;
    }

    // theta header
    {
      detail::LineCursor probe = cur;
      if (auto word = probe.identifier(); word && *word == "theta" && probe.identifier()) {
        cur.identifier();
        const std::size_t name_pos = (cur.skip_ws(), cur.pos());
        auto name = cur.identifier();
        cur.expect("=", "'='");
        Theta th = detail::parse_theta(cur);
        if (!cur.at_end() && cur.peek() != '#') cur.fail("unexpected trailing text");
        thetas.push_back({*name, std::move(th), line_no, name_pos + 1});
        if (end == text.size()) break;
        continue;
      }
    }

    const std::size_t line_start = (cur.skip_ws(), cur.pos());
    auto lhs = detail::parse_complex(cur);
    bool reversible = false;
    if (cur.consume("<->")) reversible = true;
    else if (!cur.consume("->")) cur.fail("expected '->' or '<->'");
    auto rhs = detail::parse_complex(cur);
    cur.expect(";", "';' before rate constants");

    std::vector<double> rates;
    std::vector<std::size_t> rate_pos;
    rate_pos.push_back((cur.skip_ws(), cur.pos()));
    rates.push_back(cur.real());
    while (cur.consume(",")) {
      rate_pos.push_back((cur.skip_ws(), cur.pos()));
      rates.push_back(cur.real());
    }
    if (!cur.at_end() && cur.peek() != '#') cur.fail("unexpected trailing text");
    if (rates.size() != (reversible ? 2u : 1u))
      cur.fail_at(rate_pos.back(), reversible ? "'<->' needs two rate constants" : "'->' needs one rate constant");
    for (std::size_t i = 0; i < rates.size(); ++i)
      if (!(rates[i] > 0)) cur.fail_at(rate_pos[i], "rate constant must be positive");

    const std::size_t src = complex_index(lhs);
    const std::size_t tgt = complex_index(rhs);
    if (src == tgt) cur.fail_at(line_start, "self-loop reaction");
    auto add_reaction = [&](std::size_t a, std::size_t b, double k) {
      for (const auto& r : reactions)
        if (r.source == a && r.target == b) cur.fail_at(line_start, "duplicate reaction");
      reactions.push_back({a, b});
      kappa.push_back(k);
    };
    add_reaction(src, tgt, rates[0]);
    if (reversible) add_reaction(tgt, src, rates[1]);
    if (end == text.size()) break;
  }

  KineticsSpec spec;
  spec.kappa = std::move(kappa);
  spec.theta.assign(species.size(), Theta::linear());
  std::vector<bool> theta_set(species.size(), false);
  for (auto& t : thetas) {
    std::optional<std::size_t> idx;
    for (std::size_t i = 0; i < species.size(); ++i)
      if (species[i] == t.species) idx = i;
    if (!idx) throw ParseError(t.line, t.column, "theta for unknown species '" + t.species + "'");
    if (theta_set[*idx]) throw ParseError(t.line, t.column, "theta for '" + t.species + "' given twice");
    theta_set[*idx] = true;
    spec.theta[*idx] = std::move(t.theta);
  }
  spec.kind = spec.all_linear() ? KineticsKind::StochasticMassAction : KineticsKind::StochasticProductForm;

  return ParsedModel{ReactionNetwork(std::move(species), std::move(complexes), std::move(reactions)),
                     std::move(spec)};
}

/// DSL text that reparses to an identical network and kinetics.  Each
/// reaction gets its own "->" line; terms are written in species order.
inline std::string serialize_network(const ReactionNetwork& net, const KineticsSpec& spec) {
  std::string out;
  for (std::size_t i = 0; i < net.num_species(); ++i) {
    if (i < spec.theta.size() && !spec.theta[i].is_linear())
      out += "theta " + net.species()[i].name + " = " + spec.theta[i].describe() + "\n";
  }
  auto complex_text = [&](std::size_t j) {
    const auto& c = net.complex(j);
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      if (!s.empty()) s += " + ";
      if (c[i] != 1) s += std::to_string(c[i]);
      s += net.species()[i].name;
    }
    return s.empty() ? std::string("0") : s;
  };
  for (std::size_t k = 0; k < net.num_reactions(); ++k) {
    out += complex_text(net.reaction(k).source) + " -> " + complex_text(net.reaction(k).target) + " ; " +
           detail::format_real(spec.kappa.at(k)) + "\n";
  }
  return out;
}

}  // namespace crn
