#include "sumprod/predicate.hpp"

#include <algorithm>
#include <cctype>

#include "sumprod/errors.hpp"

namespace sumprod {

struct Predicate::Node {
  enum class Kind { all, none, num_mod, den_mod, floor_mod, interval, vpart_mod, conj, disj, neg };
  Kind kind = Kind::all;
  BigInt modulus = 1;
  BigInt residue = 0;
  Rational lo, hi;
  std::vector<std::shared_ptr<const Node>> children;
};

namespace {

using Node = Predicate::Node;
using Kind = Node::Kind;

BigInt floor_of(const Rational& x) {
  const BigInt n = numerator_of(x);
  const BigInt d = denominator_of(x);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

bool residue_matches(const BigInt& value, const BigInt& modulus, const BigInt& residue) {
  BigInt r = value % modulus;
  if (r < 0) r += modulus;
  return r == residue;
}

bool eval(const Node& n, const Rational& x, const std::optional<FolnerCoords>& coords) {
  switch (n.kind) {
    case Kind::all:
      return true;
    case Kind::none:
      return false;
    case Kind::num_mod:
      return residue_matches(numerator_of(x), n.modulus, n.residue);
    case Kind::den_mod:
      return residue_matches(denominator_of(x), n.modulus, n.residue);
    case Kind::floor_mod:
      return residue_matches(floor_of(x), n.modulus, n.residue);
    case Kind::interval:
      return n.lo <= x && x < n.hi;
    case Kind::vpart_mod:
      if (!coords) throw Error("vpart_mod is only defined on Følner-set elements");
      return residue_matches(BigInt(coords->k), n.modulus, n.residue);
    case Kind::conj:
      return std::all_of(n.children.begin(), n.children.end(), [&](const auto& c) { return eval(*c, x, coords); });
    case Kind::disj:
      return std::any_of(n.children.begin(), n.children.end(), [&](const auto& c) { return eval(*c, x, coords); });
    case Kind::neg:
      return !eval(*n.children.front(), x, coords);
  }
  return false;
}

bool value_only(const Node& n) {
  if (n.kind == Kind::vpart_mod) return false;
  return std::all_of(n.children.begin(), n.children.end(), [](const auto& c) { return value_only(*c); });
}

std::string render(const Node& n) {
  auto residue = [&](const char* name) {
    return std::string(name) + "(" + n.modulus.str() + "," + n.residue.str() + ")";
  };
  auto list = [&](const char* name) {
    std::string out = std::string(name) + "(";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) out += ",";
      out += render(*n.children[i]);
    }
    return out + ")";
  };
  switch (n.kind) {
    case Kind::all:
      return "all";
    case Kind::none:
      return "none";
    case Kind::num_mod:
      return residue("num_mod");
    case Kind::den_mod:
      return residue("den_mod");
    case Kind::floor_mod:
      return residue("floor_mod");
    case Kind::vpart_mod:
      return residue("vpart_mod");
    case Kind::interval:
      return "interval(" + to_string(n.lo) + "," + to_string(n.hi) + ")";
    case Kind::conj:
      return list("and");
    case Kind::disj:
      return list("or");
    case Kind::neg:
      return list("not");
  }
  return "";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::shared_ptr<const Node> parse_all() {
    auto node = parse_term();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("predicate '" + std::string(text_) + "': " + why + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a predicate name");
    return std::string(text_.substr(start, pos_ - start));
  }

  Rational number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    return parse_rational(text_.substr(start, pos_ - start));
  }

  BigInt integer() {
    const Rational r = number();
    if (denominator_of(r) != 1) fail("expected an integer");
    return numerator_of(r);
  }

  std::shared_ptr<const Node> parse_term() {
    const std::string name = identifier();
    auto node = std::make_shared<Node>();
    if (name == "all" || name == "none") {
      node->kind = name == "all" ? Kind::all : Kind::none;
      return node;
    }
    expect('(');
    if (name == "num_mod" || name == "den_mod" || name == "floor_mod" || name == "vpart_mod") {
      node->kind = name == "num_mod"     ? Kind::num_mod
                   : name == "den_mod"   ? Kind::den_mod
                   : name == "floor_mod" ? Kind::floor_mod
                                         : Kind::vpart_mod;
      node->modulus = integer();
      expect(',');
      node->residue = integer();
      if (node->modulus < 1) fail("modulus must be positive");
      if (node->residue < 0 || node->residue >= node->modulus) fail("residue must lie in [0, modulus)");
    } else if (name == "interval") {
      node->kind = Kind::interval;
      node->lo = number();
      expect(',');
      node->hi = number();
    } else if (name == "and" || name == "or" || name == "not") {
      node->kind = name == "and" ? Kind::conj : name == "or" ? Kind::disj : Kind::neg;
      do {
        node->children.push_back(parse_term());
      } while (accept(','));
      if (node->kind == Kind::neg && node->children.size() != 1) fail("not() takes exactly one argument");
    } else {
      fail("unknown predicate '" + name + "'");
    }
    expect(')');
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Predicate Predicate::parse(std::string_view text) { return Predicate(Parser(text).parse_all()); }

Predicate Predicate::everything() { return Predicate(std::make_shared<Node>()); }

bool Predicate::operator()(const Rational& x, const std::optional<FolnerCoords>& coords) const {
  return eval(*root_, x, coords);
}

bool Predicate::value_only() const { return sumprod::value_only(*root_); }

std::string Predicate::to_string() const { return render(*root_); }

}  // namespace sumprod
