#pragma once

#include <map>
#include <string>
#include <vector>

#include "nuchern/error.hpp"

namespace nuchern {

/* Generator kinds. The first five mirror the coordinate/partner vocabulary of
   chart algebras; Scalar covers bookkeeping variables (partition weights,
   series variables) that never take part in nu pairing; Constant marks
   formal even constants that the exterior derivative annihilates. */
enum class SymKind {
  EvenCoord,   // z_k           parity 0
  OddCoord,    // e_l           parity 1
  NuEven,      // nu(e_l)       parity 0
  NuOdd,       // nu(z_k)       parity 1
  NuOne,       // nu(1)         parity 1
  Scalar,      // rho, z, ...   parity 0
  Constant,    // tau, ...      parity 0, d = 0
};

inline int parity_of(SymKind k) {
  switch (k) {
    case SymKind::EvenCoord:
    case SymKind::NuEven:
    case SymKind::Scalar:
    case SymKind::Constant:
      return 0;
    case SymKind::OddCoord:
    case SymKind::NuOdd:
    case SymKind::NuOne:
      return 1;
  }
  return 0;
}

struct SymbolInfo {
  std::string name;  // token-safe internal name, e.g. "z1@4"
  SymKind kind = SymKind::Scalar;
  int chart = -1;    // owning chart index, or -1
  int index = 0;     // k or l within its kind
  int partner = -1;  // paired symbol id (e_l <-> nu(e_l), z_k <-> nu(z_k)), or -1
};

/* Global append-only symbol store. Ids are dense ints; all algebra types refer
   to symbols by id only, so sharing values across registries is safe. */
class Symtab {
 public:
  static int add(SymbolInfo info) {
    table().push_back(std::move(info));
    return static_cast<int>(table().size()) - 1;
  }
  static const SymbolInfo& info(int id) {
    if (id < 0 || id >= static_cast<int>(table().size()))
      fail(Err::IndexOutOfRange, "unknown symbol id " + std::to_string(id));
    return table()[static_cast<size_t>(id)];
  }
  static void link_partners(int a, int b) {
    table()[static_cast<size_t>(a)].partner = b;
    table()[static_cast<size_t>(b)].partner = a;
  }
  static int size() { return static_cast<int>(table().size()); }

 private:
  static std::vector<SymbolInfo>& table() {
    static std::vector<SymbolInfo> t;
    return t;
  }
};

inline int sym_parity(int id) { return parity_of(Symtab::info(id).kind); }
inline const std::string& sym_name(int id) { return Symtab::info(id).name; }

/* A registry is a named view into the symbol store: it owns uniqueness of
   names and provides name lookup for the text formats. */
class Registry {
 public:
  int register_symbol(const std::string& name, SymKind kind, int chart = -1, int index = 0) {
    if (byname_.count(name)) fail(Err::DuplicateName, "symbol '" + name + "' already registered");
    int id = Symtab::add(SymbolInfo{name, kind, chart, index, -1});
    byname_[name] = id;
    ids_.push_back(id);
    return id;
  }
  /* Registers a coordinate together with its nu-partner and links them. */
  std::pair<int, int> register_pair(const std::string& base, SymKind kind, int chart = -1,
                                    int index = 0) {
    SymKind pk;
    if (kind == SymKind::OddCoord)
      pk = SymKind::NuEven;
    else if (kind == SymKind::EvenCoord)
      pk = SymKind::NuOdd;
    else
      fail(Err::BadConfig, "register_pair expects a coordinate kind");
    int a = register_symbol(base, kind, chart, index);
    int b = register_symbol("nu_" + base, pk, chart, index);
    Symtab::link_partners(a, b);
    return {a, b};
  }
  int find(const std::string& name) const {
    auto it = byname_.find(name);
    if (it == byname_.end()) fail(Err::IndexOutOfRange, "unknown symbol name '" + name + "'");
    return it->second;
  }
  bool contains(const std::string& name) const { return byname_.count(name) != 0; }
  const std::vector<int>& ids() const { return ids_; }

 private:
  std::map<std::string, int> byname_;
  std::vector<int> ids_;
};

}  // namespace nuchern
