#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpspec/term.hpp"

namespace lpspec {

// Rigidity pair per position: bit 1 is termsize (g), bit 0 is listlength (l).
// The code 2 (g without l) does not exist.
enum class BTValue : std::uint8_t { D = 0, L = 1, G = 3 };

inline bool g_bit(BTValue v) { return (static_cast<unsigned>(v) & 2u) != 0; }
inline bool l_bit(BTValue v) { return (static_cast<unsigned>(v) & 1u) != 0; }
// D < L < G.
inline bool bt_leq(BTValue a, BTValue b) { return static_cast<unsigned>(a) <= static_cast<unsigned>(b); }
char bt_char(BTValue v);
BTValue bt_from_char(char c);
std::string bt_string(const std::vector<BTValue>& vs);

enum class Norm { Termsize, Listlength };

// Termsize is always tracked. Without listlength the values are just G and D.
struct Norms {
  bool listlength = true;
  bool operator==(const Norms&) const = default;
};

using Tuple = std::uint64_t;
inline constexpr std::size_t kMaxPositions = 32;

inline BTValue tuple_get(Tuple t, std::size_t pos) { return static_cast<BTValue>((t >> (2 * pos)) & 3u); }
inline Tuple tuple_set(Tuple t, std::size_t pos, BTValue v) {
  return (t & ~(Tuple{3} << (2 * pos))) | (Tuple{static_cast<unsigned>(v)} << (2 * pos));
}

// A set of binding-time tuples over named positions. The empty set is false.
class BTTable {
 public:
  BTTable() = default;
  BTTable(std::vector<std::string> schema, std::vector<Tuple> tuples);

  const std::vector<std::string>& schema() const { return schema_; }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  std::size_t arity() const { return schema_.size(); }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  std::optional<std::size_t> index_of(const std::string& pos) const;
  std::size_t require(const std::string& pos) const;
  bool contains(Tuple t) const;
  // Same schema and every tuple of this is in other.
  bool subset_of(const BTTable& other) const;
  std::vector<BTValue> values(Tuple t) const;

  // One tuple per line, values in schema order.
  std::string to_text() const;

  friend bool operator==(const BTTable&, const BTTable&) = default;

 private:
  std::vector<std::string> schema_;
  std::vector<Tuple> tuples_;
};

std::vector<BTValue> value_domain(Norms norms);

BTTable top(std::vector<std::string> schema, Norms norms = {});
BTTable bottom(std::vector<std::string> schema);
BTTable project(const BTTable& t, const std::vector<std::string>& positions);
BTTable equi_join(const std::vector<std::string>& positions, const BTTable& outer, const BTTable& inner);
BTTable join(const BTTable& a, const BTTable& b);
BTTable extend(const BTTable& t, const std::vector<std::string>& positions, Norms norms = {});
// Keep the tuples whose n-bit at pos is set.
BTTable constrain(const BTTable& t, const std::string& pos, Norm n);

// `lhs = rhs` (alias) or `lhs = functor(args...)` with variable args.
struct FlatEquation {
  std::string lhs;
  bool alias = false;
  std::string functor;
  std::vector<std::string> args;
};

BTTable abstract_unify(const BTTable& t, const FlatEquation& eq, Norms norms = {});

bool is_rigid(const BTTable& t, std::size_t pos, Norm n);
BTValue classify(const BTTable& t, std::size_t pos);

struct Condition {
  enum class Kind { True, Ground, BoundedList, And, Or };
  Kind kind = Kind::True;
  std::size_t pos = 0;
  std::vector<Condition> kids;

  static Condition truth() { return {}; }
  static Condition ground(std::size_t pos) { return {Kind::Ground, pos, {}}; }
  static Condition bounded_list(std::size_t pos) { return {Kind::BoundedList, pos, {}}; }
  static Condition both(Condition a, Condition b) { return {Kind::And, 0, {std::move(a), std::move(b)}}; }
  static Condition either(Condition a, Condition b) { return {Kind::Or, 0, {std::move(a), std::move(b)}}; }

  bool holds(const std::vector<BTValue>& vals) const;
  // Atoms mentioning `pos`, in left-to-right order.
  std::vector<Kind> atoms_on(std::size_t pos) const;
  // One past the highest position mentioned; 0 when none is.
  std::size_t max_position() const;
  std::string to_string(const std::vector<std::string>& names) const;

  friend bool operator==(const Condition&, const Condition&) = default;
};

enum class Truth { DefinitelyTrue, Unknown };

Truth eval_condition(const BTTable& t, const Condition& c);

enum class Pins { Both, TermsizeOnly };

// Keep the rigid bits of each position and free everything else. With
// Pins::TermsizeOnly a listlength-only rigidity is dropped as well.
BTTable generalise(const BTTable& t, Norms norms = {}, Pins pins = Pins::Both);

BTValue concrete_bt(const Term& t);

}  // namespace lpspec
