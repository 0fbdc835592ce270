#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gerbecalc {

// Object, morphism and element names are canonical strings; equality of
// entities is equality of ids. User-supplied ids must avoid the reserved
// characters used by minted ids (slice morphisms, arrow classes, matching
// families).
using Id = std::string;

inline constexpr const char* kReservedIdChars = "@>|:;=,{}[]() \t\n";

inline bool valid_user_id(const Id& id) {
  if (id.empty()) return false;
  return id.find_first_of(kReservedIdChars) == Id::npos;
}

inline void require_user_id(const Id& id, const char* what) {
  if (!valid_user_id(id)) {
    throw std::invalid_argument(std::string(what) + ": bad id '" + id + "'");
  }
}

// Slice-site morphism: base morphism g into dom(target), target slice object.
inline Id mint_slice_morphism(const Id& base, const Id& target_object) {
  return base + "@" + target_object;
}

// Cech-groupoid arrow x -> y.
inline Id mint_span(const Id& x, const Id& y) { return x + ">" + y; }

// Arrow class [(f,alpha)] of a Grothendieck construction.
inline Id mint_pair_class(const Id& f, const Id& alpha) {
  return "[" + f + "|" + alpha + "]";
}

// Cell of a product two-groupoid.
inline Id mint_product(const Id& a, const Id& b) { return "(" + a + "," + b + ")"; }

struct gc_error : std::runtime_error {
  explicit gc_error(const std::string& m) : std::runtime_error(m) {}
};

struct precondition_error : gc_error {
  explicit precondition_error(const std::string& m) : gc_error(m) {}
};

struct budget_error : gc_error {
  explicit budget_error(const std::string& m) : gc_error(m) {}
};

struct parse_error : gc_error {
  parse_error(const std::string& m, int line)
      : gc_error("line " + std::to_string(line) + ": " + m), line_no(line) {}
  int line_no;
};

}  // namespace gerbecalc
