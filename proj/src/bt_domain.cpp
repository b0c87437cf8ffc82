#include "lpspec/bt_domain.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace lpspec {

char bt_char(BTValue v) {
  switch (v) {
    case BTValue::G:
      return 'G';
    case BTValue::L:
      return 'L';
    case BTValue::D:
      return 'D';
  }
  return '?';
}

BTValue bt_from_char(char c) {
  switch (c) {
    case 'G':
      return BTValue::G;
    case 'L':
      return BTValue::L;
    case 'D':
      return BTValue::D;
    default:
      throw Error(std::string("not a binding-time value: ") + c);
  }
}

std::string bt_string(const std::vector<BTValue>& vs) {
  std::string s = "(";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ',';
    s += bt_char(vs[i]);
  }
  return s + ")";
}

BTTable::BTTable(std::vector<std::string> schema, std::vector<Tuple> tuples)
    : schema_(std::move(schema)), tuples_(std::move(tuples)) {
  if (schema_.size() > kMaxPositions) throw Error("table has more than 32 positions");
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

std::optional<std::size_t> BTTable::index_of(const std::string& pos) const {
  auto it = std::find(schema_.begin(), schema_.end(), pos);
  if (it == schema_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - schema_.begin());
}

std::size_t BTTable::require(const std::string& pos) const {
  auto i = index_of(pos);
  if (!i) throw Error("unknown table position " + pos);
  return *i;
}

bool BTTable::contains(Tuple t) const { return std::binary_search(tuples_.begin(), tuples_.end(), t); }

bool BTTable::subset_of(const BTTable& other) const {
  return schema_ == other.schema_ && std::includes(other.tuples_.begin(), other.tuples_.end(), tuples_.begin(),
                                                   tuples_.end());
}

std::vector<BTValue> BTTable::values(Tuple t) const {
  std::vector<BTValue> out;
  for (std::size_t i = 0; i < schema_.size(); ++i) out.push_back(tuple_get(t, i));
  return out;
}

std::string BTTable::to_text() const {
  std::string out;
  for (auto t : tuples_) {
    out += bt_string(values(t));
    out += '\n';
  }
  return out;
}

std::vector<BTValue> value_domain(Norms norms) {
  if (norms.listlength) return {BTValue::G, BTValue::L, BTValue::D};
  return {BTValue::G, BTValue::D};
}

BTTable top(std::vector<std::string> schema, Norms norms) {
  std::vector<Tuple> tuples{0};
  const auto dom = value_domain(norms);
  for (std::size_t i = 0; i < schema.size(); ++i) {
    std::vector<Tuple> next;
    next.reserve(tuples.size() * dom.size());
    for (auto t : tuples)
      for (auto v : dom) next.push_back(tuple_set(t, i, v));
    tuples = std::move(next);
  }
  return BTTable(std::move(schema), std::move(tuples));
}

BTTable bottom(std::vector<std::string> schema) { return BTTable(std::move(schema), {}); }

BTTable project(const BTTable& t, const std::vector<std::string>& positions) {
  std::vector<std::size_t> idx;
  for (const auto& p : positions) idx.push_back(t.require(p));
  std::vector<Tuple> out;
  out.reserve(t.size());
  for (auto tup : t.tuples()) {
    Tuple r = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) r = tuple_set(r, k, tuple_get(tup, idx[k]));
    out.push_back(r);
  }
  return BTTable(positions, std::move(out));
}

BTTable equi_join(const std::vector<std::string>& positions, const BTTable& outer, const BTTable& inner) {
  if (inner.schema() != positions) throw Error("equi_join: inner schema does not match the join positions");
  std::vector<std::size_t> idx;
  for (const auto& p : positions) idx.push_back(outer.require(p));
  std::vector<Tuple> out;
  for (auto tup : outer.tuples()) {
    Tuple r = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) r = tuple_set(r, k, tuple_get(tup, idx[k]));
    if (inner.contains(r)) out.push_back(tup);
  }
  return BTTable(outer.schema(), std::move(out));
}

BTTable join(const BTTable& a, const BTTable& b) {
  if (a.schema() != b.schema()) throw Error("join: schemas differ");
  std::vector<Tuple> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.tuples().begin(), a.tuples().end(), b.tuples().begin(), b.tuples().end(),
                 std::back_inserter(out));
  return BTTable(a.schema(), std::move(out));
}

BTTable extend(const BTTable& t, const std::vector<std::string>& positions, Norms norms) {
  auto schema = t.schema();
  for (const auto& p : positions) {
    if (t.index_of(p)) throw Error("extend: position already present: " + p);
    schema.push_back(p);
  }
  if (schema.size() > kMaxPositions) throw Error("table has more than 32 positions");
  std::vector<Tuple> tuples = t.tuples();
  const auto dom = value_domain(norms);
  for (std::size_t i = t.arity(); i < schema.size(); ++i) {
    std::vector<Tuple> next;
    next.reserve(tuples.size() * dom.size());
    for (auto tup : tuples)
      for (auto v : dom) next.push_back(tuple_set(tup, i, v));
    tuples = std::move(next);
  }
  return BTTable(std::move(schema), std::move(tuples));
}

BTTable constrain(const BTTable& t, const std::string& pos, Norm n) {
  std::size_t i = t.require(pos);
  std::vector<Tuple> out;
  for (auto tup : t.tuples()) {
    BTValue v = tuple_get(tup, i);
    if (n == Norm::Termsize ? g_bit(v) : l_bit(v)) out.push_back(tup);
  }
  return BTTable(t.schema(), std::move(out));
}

BTTable abstract_unify(const BTTable& t, const FlatEquation& eq, Norms norms) {
  std::size_t lhs = t.require(eq.lhs);
  std::vector<std::size_t> args;
  for (const auto& a : eq.args) args.push_back(t.require(a));
  if (eq.alias && args.size() != 1) throw Error("abstract_unify: alias needs exactly one right-hand variable");
  const bool cons = !eq.alias && eq.functor == "." && args.size() == 2;
  std::vector<Tuple> out;
  for (auto tup : t.tuples()) {
    BTValue lv = tuple_get(tup, lhs);
    bool all_g = true;
    for (auto a : args) all_g = all_g && g_bit(tuple_get(tup, a));
    if (g_bit(lv) != all_g) continue;
    if (norms.listlength) {
      bool l_rhs = true;
      if (eq.alias) {
        l_rhs = l_bit(tuple_get(tup, args[0]));
      } else if (cons) {
        l_rhs = l_bit(tuple_get(tup, args[1]));
      }
      if (l_bit(lv) != l_rhs) continue;
    }
    out.push_back(tup);
  }
  return BTTable(t.schema(), std::move(out));
}

bool is_rigid(const BTTable& t, std::size_t pos, Norm n) {
  return std::all_of(t.tuples().begin(), t.tuples().end(), [&](Tuple tup) {
    BTValue v = tuple_get(tup, pos);
    return n == Norm::Termsize ? g_bit(v) : l_bit(v);
  });
}

BTValue classify(const BTTable& t, std::size_t pos) {
  if (is_rigid(t, pos, Norm::Termsize)) return BTValue::G;
  if (is_rigid(t, pos, Norm::Listlength)) return BTValue::L;
  return BTValue::D;
}

bool Condition::holds(const std::vector<BTValue>& vals) const {
  switch (kind) {
    case Kind::True:
      return true;
    case Kind::Ground:
      return g_bit(vals.at(pos));
    case Kind::BoundedList:
      return l_bit(vals.at(pos));
    case Kind::And:
      return std::all_of(kids.begin(), kids.end(), [&](const Condition& k) { return k.holds(vals); });
    case Kind::Or:
      return std::any_of(kids.begin(), kids.end(), [&](const Condition& k) { return k.holds(vals); });
  }
  return false;
}

std::vector<Condition::Kind> Condition::atoms_on(std::size_t p) const {
  std::vector<Kind> out;
  if ((kind == Kind::Ground || kind == Kind::BoundedList) && pos == p) out.push_back(kind);
  for (const auto& k : kids) {
    auto sub = k.atoms_on(p);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::size_t Condition::max_position() const {
  std::size_t m = (kind == Kind::Ground || kind == Kind::BoundedList) ? pos + 1 : 0;
  for (const auto& k : kids) m = std::max(m, k.max_position());
  return m;
}

std::string Condition::to_string(const std::vector<std::string>& names) const {
  auto name = [&](std::size_t p) { return p < names.size() ? names[p] : "#" + std::to_string(p + 1); };
  switch (kind) {
    case Kind::True:
      return "true";
    case Kind::Ground:
      return "ground(" + name(pos) + ")";
    case Kind::BoundedList:
      return "bounded_list(" + name(pos) + ")";
    case Kind::And:
      return kids[0].to_string(names) + ", " + kids[1].to_string(names);
    case Kind::Or:
      return "(" + kids[0].to_string(names) + " ; " + kids[1].to_string(names) + ")";
  }
  return "";
}

Truth eval_condition(const BTTable& t, const Condition& c) {
  for (auto tup : t.tuples())
    if (!c.holds(t.values(tup))) return Truth::Unknown;
  return Truth::DefinitelyTrue;
}

BTTable generalise(const BTTable& t, Norms norms, Pins pins) {
  if (t.empty()) return t;
  std::vector<std::vector<BTValue>> allowed;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (is_rigid(t, i, Norm::Termsize)) {
      allowed.push_back({BTValue::G});
    } else if (norms.listlength && pins == Pins::Both && is_rigid(t, i, Norm::Listlength)) {
      allowed.push_back({BTValue::G, BTValue::L});
    } else {
      allowed.push_back(value_domain(norms));
    }
  }
  std::vector<Tuple> tuples{0};
  for (std::size_t i = 0; i < allowed.size(); ++i) {
    std::vector<Tuple> next;
    for (auto tup : tuples)
      for (auto v : allowed[i]) next.push_back(tuple_set(tup, i, v));
    tuples = std::move(next);
  }
  return BTTable(t.schema(), std::move(tuples));
}

BTValue concrete_bt(const Term& t) {
  if (t.is_ground()) return BTValue::G;
  if (t.is_var()) return BTValue::D;
  if (t.is_cons()) return concrete_bt(t.arg(1)) == BTValue::D ? BTValue::D : BTValue::L;
  return BTValue::L;
}

}  // namespace lpspec
