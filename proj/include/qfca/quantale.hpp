#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qfca {

// Index into a quantale carrier.
using Elem = int;

class Quantale;
using QuantalePtr = std::shared_ptr<const Quantale>;

// A finite commutative unital quantale: a complete lattice (here: a finite
// lattice, given by its order relation) carrying a commutative monoid whose
// multiplication distributes over joins. Element labels are opaque; all
// algebra is index-based. Residuation and the binary join/meet tables are
// derived during construction, never user-supplied.
//
// Instances are immutable and shared by pointer. Two quantales never
// interoperate unless they are the same instance, even if their tables
// coincide.
class Quantale {
public:
  static QuantalePtr make(std::vector<std::string> carrier,
                          const std::vector<std::vector<bool>>& leq,
                          const std::vector<std::vector<Elem>>& tensor,
                          Elem unit) {
    return QuantalePtr(new Quantale(std::move(carrier), leq, tensor, unit));
  }

  // Built-in families. Chains are presented bottom-to-top except for the
  // Lawvere family, whose lattice order is the reverse of the numeric one.
  static QuantalePtr boolean2() {
    return make({"0", "1"}, {{true, true}, {false, true}},
                {{0, 0}, {0, 1}}, 1);
  }

  // n-chain with meet as multiplication and the top element as unit.
  static QuantalePtr goedel(int n) {
    check_chain_size(n);
    std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
    for (Elem i = 0; i < n; ++i)
      for (Elem j = 0; j < n; ++j) t[i][j] = std::min(i, j);
    return make(unit_interval_labels(n), chain_leq(n), t, n - 1);
  }

  // n equally spaced points of [0,1] with x*y = max(0, x+y-1).
  static QuantalePtr lukasiewicz(int n) {
    check_chain_size(n);
    std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
    for (Elem i = 0; i < n; ++i)
      for (Elem j = 0; j < n; ++j) t[i][j] = std::max(0, i + j - (n - 1));
    return make(unit_interval_labels(n), chain_leq(n), t, n - 1);
  }

  // {0,1,...,n-1,inf} with saturating addition and unit 0. The lattice
  // order is reversed: x <= y iff x >= y numerically, so inf is the
  // bottom of the lattice and 0 is its top.
  static QuantalePtr lawvere(int n) {
    check_chain_size(n);
    const int m = n + 1;  // n finite values plus inf
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    labels.push_back("inf");
    std::vector<std::vector<bool>> leq(m, std::vector<bool>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) leq[i][j] = i >= j;
    std::vector<std::vector<Elem>> t(m, std::vector<Elem>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (i == n || j == n || i + j > n - 1)
          t[i][j] = n;  // saturate to inf
        else
          t[i][j] = i + j;
      }
    return make(std::move(labels), leq, t, 0);
  }

  static QuantalePtr builtin(const std::string& name, int n = 0) {
    if (name == "boolean2") return boolean2();
    if (name == "goedel") return goedel(n);
    if (name == "lukasiewicz") return lukasiewicz(n);
    if (name == "lawvere") return lawvere(n);
    throw UnknownFamily("no builtin quantale family named '" + name + "'");
  }

  int size() const { return n_; }
  const std::string& label(Elem x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }

  // Resolves a label to its index, -1 if absent.
  Elem index_of(const std::string& label) const {
    for (Elem i = 0; i < n_; ++i)
      if (labels_[i] == label) return i;
    return -1;
  }

  bool leq(Elem x, Elem y) const { return leq_[x * n_ + y]; }
  Elem tensor(Elem x, Elem y) const { return tensor_[x * n_ + y]; }
  // Residuation x -> y, the largest z with x * z <= y.
  Elem residuate(Elem x, Elem y) const { return residuum_[x * n_ + y]; }

  Elem unit() const { return unit_; }
  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }

  Elem join2(Elem x, Elem y) const { return join2_[x * n_ + y]; }
  Elem meet2(Elem x, Elem y) const { return meet2_[x * n_ + y]; }

  // Join/meet of an arbitrary (possibly empty) subset of the carrier.
  Elem join(std::span<const Elem> xs) const {
    Elem acc = bottom_;
    for (Elem x : xs) acc = join2(acc, x);
    return acc;
  }
  Elem meet(std::span<const Elem> xs) const {
    Elem acc = top_;
    for (Elem x : xs) acc = meet2(acc, x);
    return acc;
  }
  Elem join(std::initializer_list<Elem> xs) const {
    return join(std::span<const Elem>(xs.begin(), xs.size()));
  }
  Elem meet(std::initializer_list<Elem> xs) const {
    return meet(std::span<const Elem>(xs.begin(), xs.size()));
  }

private:
  Quantale(std::vector<std::string> carrier,
           const std::vector<std::vector<bool>>& leq,
           const std::vector<std::vector<Elem>>& tensor, Elem unit)
      : labels_(std::move(carrier)), n_(static_cast<int>(labels_.size())) {
    if (n_ == 0) throw BadSize("carrier must be nonempty");
    if (static_cast<int>(leq.size()) != n_ ||
        static_cast<int>(tensor.size()) != n_)
      throw BadSize("leq and tensor must be " + std::to_string(n_) + "x" +
                    std::to_string(n_));
    leq_.resize(n_ * n_);
    tensor_.resize(n_ * n_);
    for (int i = 0; i < n_; ++i) {
      if (static_cast<int>(leq[i].size()) != n_ ||
          static_cast<int>(tensor[i].size()) != n_)
        throw BadSize("row " + std::to_string(i) + " has wrong length");
      for (int j = 0; j < n_; ++j) {
        leq_[i * n_ + j] = leq[i][j];
        Elem t = tensor[i][j];
        if (t < 0 || t >= n_)
          throw BadSize("tensor(" + std::to_string(i) + "," +
                        std::to_string(j) + ") out of range");
        tensor_[i * n_ + j] = t;
      }
    }
    if (unit < 0 || unit >= n_) throw BadSize("unit index out of range");
    unit_ = unit;

    validate_order();
    derive_lattice();
    validate_monoid();
    validate_distributivity();
    derive_residuum();
  }

  std::string name(Elem x) const { return labels_[x]; }

  static void check_chain_size(int n) {
    if (n < 2) throw BadSize("chain quantales need n >= 2");
  }

  static std::vector<std::vector<bool>> chain_leq(int n) {
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) leq[i][j] = i <= j;
    return leq;
  }

  static std::vector<std::string> unit_interval_labels(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
      if (i == 0) {
        labels.push_back("0");
      } else if (i == n - 1) {
        labels.push_back("1");
      } else {
        int g = std::gcd(i, n - 1);
        labels.push_back(std::to_string(i / g) + "/" +
                         std::to_string((n - 1) / g));
      }
    }
    return labels;
  }

  void validate_order() const {
    for (int x = 0; x < n_; ++x)
      if (!leq(x, x))
        throw LatticeIncomplete("leq is not reflexive at " + name(x));
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        if (x != y && leq(x, y) && leq(y, x))
          throw LatticeIncomplete("leq is not antisymmetric on {" + name(x) +
                                  "," + name(y) + "}");
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        for (int z = 0; z < n_; ++z)
          if (leq(x, y) && leq(y, z) && !leq(x, z))
            throw LatticeIncomplete("leq is not transitive on (" + name(x) +
                                    "," + name(y) + "," + name(z) + ")");
  }

  // In a finite poset, a bottom plus all binary joins give all joins, and
  // then all meets exist as joins of lower bounds; we still locate every
  // binary meet directly so both tables are exact.
  void derive_lattice() {
    auto least_of = [&](auto&& pred, const std::string& what) -> Elem {
      Elem best = -1;
      for (Elem c = 0; c < n_; ++c) {
        if (!pred(c)) continue;
        bool minimal = true;
        for (Elem d = 0; d < n_; ++d)
          if (pred(d) && !leq(c, d)) {
            minimal = false;
            break;
          }
        if (minimal) {
          best = c;
          break;
        }
      }
      if (best < 0) throw LatticeIncomplete(what);
      return best;
    };

    bottom_ = least_of(
        [&](Elem c) {
          for (Elem y = 0; y < n_; ++y)
            if (!leq(c, y)) return false;
          return true;
        },
        "empty subset has no join (no bottom element)");
    top_ = least_of(
        [&](Elem c) {
          for (Elem y = 0; y < n_; ++y)
            if (!leq(y, c)) return false;
          return true;
        },
        "empty subset has no meet (no top element)");

    join2_.resize(n_ * n_);
    meet2_.resize(n_ * n_);
    for (Elem x = 0; x < n_; ++x)
      for (Elem y = 0; y < n_; ++y) {
        join2_[x * n_ + y] = least_of(
            [&](Elem c) { return leq(x, c) && leq(y, c); },
            "{" + name(x) + "," + name(y) + "} has no join");
        meet2_[x * n_ + y] = least_of(
            [&](Elem c) {
              if (!leq(c, x) || !leq(c, y)) return false;
              for (Elem w = 0; w < n_; ++w)
                if (leq(w, x) && leq(w, y) && !leq(w, c)) return false;
              return true;
            },
            "{" + name(x) + "," + name(y) + "} has no meet");
      }
  }

  void validate_monoid() const {
    for (Elem x = 0; x < n_; ++x) {
      if (tensor(unit_, x) != x || tensor(x, unit_) != x)
        throw NotMonoid("unit law fails at " + name(x) + ": " + name(unit_) +
                        " * " + name(x) + " = " + name(tensor(unit_, x)));
      for (Elem y = 0; y < n_; ++y) {
        if (tensor(x, y) != tensor(y, x))
          throw NotMonoid("commutativity fails on (" + name(x) + "," +
                          name(y) + ")");
        for (Elem z = 0; z < n_; ++z)
          if (tensor(tensor(x, y), z) != tensor(x, tensor(y, z)))
            throw NotMonoid("associativity fails on (" + name(x) + "," +
                            name(y) + "," + name(z) + ")");
      }
    }
  }

  // Binary joins plus the empty join suffice in a finite lattice.
  void validate_distributivity() const {
    for (Elem x = 0; x < n_; ++x) {
      if (tensor(x, bottom_) != bottom_)
        throw NotDistributive(name(x) + " * bottom = " +
                              name(tensor(x, bottom_)) + ", expected bottom");
      for (Elem y = 0; y < n_; ++y)
        for (Elem z = 0; z < n_; ++z) {
          Elem lhs = tensor(x, join2_[y * n_ + z]);
          Elem rhs = join2_[tensor(x, y) * n_ + tensor(x, z)];
          if (lhs != rhs)
            throw NotDistributive(name(x) + " * (" + name(y) + " v " +
                                  name(z) + ") = " + name(lhs) + " but (" +
                                  name(x) + "*" + name(y) + ") v (" + name(x) +
                                  "*" + name(z) + ") = " + name(rhs));
        }
    }
  }

  void derive_residuum() {
    residuum_.resize(n_ * n_);
    for (Elem x = 0; x < n_; ++x)
      for (Elem y = 0; y < n_; ++y) {
        Elem acc = bottom_;
        for (Elem z = 0; z < n_; ++z)
          if (leq(tensor(x, z), y)) acc = join2(acc, z);
        residuum_[x * n_ + y] = acc;
      }
  }

  std::vector<std::string> labels_;
  int n_;
  std::vector<char> leq_;
  std::vector<Elem> tensor_;
  std::vector<Elem> residuum_;
  std::vector<Elem> join2_, meet2_;
  Elem unit_ = 0, bottom_ = 0, top_ = 0;
};

inline void require_same_quantale(const QuantalePtr& a, const QuantalePtr& b,
                                  const std::string& where) {
  if (a.get() != b.get())
    throw QuantaleMismatch(where + ": operands live over distinct quantale "
                                   "instances");
}

}  // namespace qfca
