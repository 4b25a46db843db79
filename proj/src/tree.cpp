#include "demod/tree.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace demod {

namespace {

struct CtorRegistry {
  std::mutex mu;
  std::vector<std::pair<std::string, std::size_t>> entries;
  std::unordered_map<std::string, std::uint32_t> by_name;
};

CtorRegistry& registry() {
  static CtorRegistry r;
  return r;
}

std::size_t hash_node(std::uint32_t ctor, const std::vector<TreePtr>& kids) {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ ctor;
  for (TreePtr k : kids) {
    h ^= k->hash + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

struct NodeHash {
  std::size_t operator()(TreePtr t) const { return t->hash; }
};
struct NodeEq {
  bool operator()(TreePtr a, TreePtr b) const {
    return a->ctor == b->ctor && a->kids == b->kids;
  }
};

struct Interner {
  std::mutex mu;
  std::unordered_set<TreePtr, NodeHash, NodeEq> nodes;
  std::deque<Tree> storage;  // stable addresses
};

Interner& interner() {
  static Interner i;
  return i;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::uint32_t tree_ctor_id(const std::string& name, std::size_t arity) {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  auto it = r.by_name.find(name);
  if (it != r.by_name.end()) {
    if (r.entries[it->second].second != arity) {
      throw InputError("constructor '" + name + "' re-registered with arity " +
                       std::to_string(arity) + " (was " +
                       std::to_string(r.entries[it->second].second) + ")");
    }
    return it->second;
  }
  auto id = static_cast<std::uint32_t>(r.entries.size());
  r.entries.emplace_back(name, arity);
  r.by_name.emplace(name, id);
  return id;
}

const std::string& tree_ctor_name(std::uint32_t id) {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  return r.entries.at(id).first;
}

std::size_t tree_ctor_arity(std::uint32_t id) {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  return r.entries.at(id).second;
}

TreePtr mk_tree(std::uint32_t ctor, std::vector<TreePtr> kids) {
  if (kids.size() != tree_ctor_arity(ctor)) {
    throw InputError("constructor '" + tree_ctor_name(ctor) + "' expects " +
                     std::to_string(tree_ctor_arity(ctor)) + " children, got " +
                     std::to_string(kids.size()));
  }
  auto& in = interner();
  Tree probe{ctor, std::move(kids), 0};
  probe.hash = hash_node(probe.ctor, probe.kids);
  std::lock_guard<std::mutex> lock(in.mu);
  auto it = in.nodes.find(&probe);
  if (it != in.nodes.end()) return *it;
  in.storage.push_back(std::move(probe));
  TreePtr p = &in.storage.back();
  in.nodes.insert(p);
  return p;
}

TreePtr mk_tree(const std::string& name, std::vector<TreePtr> kids) {
  return mk_tree(tree_ctor_id(name, kids.size()), std::move(kids));
}

std::size_t TreeLang::add(const std::string& name, std::size_t arity) {
  if (name != "0" && all_digits(name)) {
    throw InputError("constructor name '" + name + "' is reserved for numerals");
  }
  if (find(name)) throw InputError("duplicate constructor '" + name + "'");
  std::uint32_t id = tree_ctor_id(name, arity);
  ctors.push_back(Ctor{name, arity, id});
  by_id_.emplace_back(id, ctors.size() - 1);
  std::sort(by_id_.begin(), by_id_.end());
  return ctors.size() - 1;
}

const TreeLang::Ctor* TreeLang::find(const std::string& name) const {
  for (const auto& c : ctors) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::size_t TreeLang::position(std::uint32_t id) const {
  auto it = std::lower_bound(by_id_.begin(), by_id_.end(),
                             std::make_pair(id, std::size_t{0}));
  if (it != by_id_.end() && it->first == id) return it->second;
  return npos;
}

void TreeLang::validate() const {
  const Ctor* z = find("0");
  const Ctor* s = find("s");
  if (!z || z->arity != 0) throw InputError("tree language lacks numeral constructor 0");
  if (!s || s->arity != 1) throw InputError("tree language lacks numeral constructor s");
}

namespace {

std::uint32_t zero_id() {
  static std::uint32_t id = tree_ctor_id("0", 0);
  return id;
}
std::uint32_t succ_id() {
  static std::uint32_t id = tree_ctor_id("s", 1);
  return id;
}

}  // namespace

TreePtr nat_tree(std::uint64_t n) {
  TreePtr t = mk_tree(zero_id(), {});
  for (std::uint64_t i = 0; i < n; ++i) t = mk_tree(succ_id(), {t});
  return t;
}

long long tree_nat(TreePtr t) {
  long long n = 0;
  while (t->ctor == succ_id()) {
    ++n;
    t = t->kids[0];
  }
  return t->ctor == zero_id() ? n : -1;
}

bool tree_in_lang(TreePtr t, const TreeLang& lang) {
  std::vector<TreePtr> stack{t};
  std::unordered_set<TreePtr> seen;
  while (!stack.empty()) {
    TreePtr cur = stack.back();
    stack.pop_back();
    if (!seen.insert(cur).second) continue;
    if (!lang.contains(cur->ctor)) return false;
    for (TreePtr k : cur->kids) stack.push_back(k);
  }
  return true;
}

std::size_t tree_size(TreePtr t) {
  // Shared subtrees count once per occurrence; memoised over the DAG.
  std::unordered_map<TreePtr, std::size_t> memo;
  std::vector<std::pair<TreePtr, bool>> stack{{t, false}};
  while (!stack.empty()) {
    auto [cur, ready] = stack.back();
    stack.pop_back();
    if (memo.count(cur)) continue;
    if (ready) {
      std::size_t n = 1;
      for (TreePtr k : cur->kids) n += memo.at(k);
      memo.emplace(cur, n);
    } else {
      stack.emplace_back(cur, true);
      for (TreePtr k : cur->kids) {
        if (!memo.count(k)) stack.emplace_back(k, false);
      }
    }
  }
  return memo.at(t);
}

std::size_t tree_height(TreePtr t) {
  std::unordered_map<TreePtr, std::size_t> memo;
  std::vector<std::pair<TreePtr, bool>> stack{{t, false}};
  while (!stack.empty()) {
    auto [cur, ready] = stack.back();
    stack.pop_back();
    if (memo.count(cur)) continue;
    if (ready) {
      std::size_t h = 0;
      for (TreePtr k : cur->kids) h = std::max(h, memo.at(k));
      memo.emplace(cur, h + 1);
    } else {
      stack.emplace_back(cur, true);
      for (TreePtr k : cur->kids) {
        if (!memo.count(k)) stack.emplace_back(k, false);
      }
    }
  }
  return memo.at(t);
}

TreePtr parse_tree(const SExpr& e, const TreeLang& lang) {
  if (e.atom) {
    if (all_digits(e.text)) {
      lang.validate();
      std::uint64_t n = 0;
      for (char c : e.text) {
        if (n > (UINT64_MAX - 9) / 10) fail_at(e, "numeral too large");
        n = n * 10 + static_cast<std::uint64_t>(c - '0');
      }
      return nat_tree(n);
    }
    const auto* c = lang.find(e.text);
    if (!c) fail_at(e, "unknown constructor '" + e.text + "'");
    if (c->arity != 0) {
      fail_at(e, "constructor '" + e.text + "' expects " +
                     std::to_string(c->arity) + " children");
    }
    return mk_tree(c->id, {});
  }
  if (e.items.empty() || !e.items[0].atom) fail_at(e, "expected a constructor application");
  const auto* c = lang.find(e.items[0].text);
  if (!c) fail_at(e.items[0], "unknown constructor '" + e.items[0].text + "'");
  if (e.items.size() - 1 != c->arity) {
    fail_at(e, "constructor '" + c->name + "' expects " + std::to_string(c->arity) +
                   " children, got " + std::to_string(e.items.size() - 1));
  }
  std::vector<TreePtr> kids;
  kids.reserve(c->arity);
  for (std::size_t i = 1; i < e.items.size(); ++i) kids.push_back(parse_tree(e.items[i], lang));
  return mk_tree(c->id, std::move(kids));
}

TreePtr parse_tree_text(const std::string& text, const TreeLang& lang) {
  return parse_tree(parse_sexpr(text), lang);
}

SExpr tree_to_sx(TreePtr t) {
  long long n = tree_nat(t);
  if (n >= 0) return sx_atom(std::to_string(n));
  if (t->kids.empty()) return sx_atom(tree_ctor_name(t->ctor));
  std::vector<SExpr> items{sx_atom(tree_ctor_name(t->ctor))};
  for (TreePtr k : t->kids) items.push_back(tree_to_sx(k));
  return sx_list(std::move(items));
}

std::string print_tree(TreePtr t) { return print_sexpr(tree_to_sx(t)); }

}  // namespace demod
