// Copyright 2026 The quasinv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Finite tensor windows (C^d)^{(x)N}, site embeddings, and the action of
// permutations of the tensor factors by conjugation with permutation
// unitaries.
//
// Index convention: site 1 is the most significant digit of the row-major
// mixed-radix basis index. Sites and permutation images are 1-based.

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "quasinv/matcore.hpp"

namespace quasinv {

class Window {
 public:
  static constexpr Eigen::Index kMaxDim = 4096;

  Window(int local_dim, int sites);

  int local_dim() const noexcept { return d_; }
  int sites() const noexcept { return n_; }
  Eigen::Index dim() const noexcept { return dim_; }

  friend bool operator==(const Window&, const Window&) = default;

 private:
  int d_;
  int n_;
  Eigen::Index dim_;
};

class Permutation {
 public:
  // image[n - 1] = g(n). Throws NotBijection unless image is a bijection of
  // {1..N}.
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int n);
  static Permutation transposition(int n, int a, int b);
  // Cycle a_1 -> a_2 -> ... -> a_k -> a_1 on {1..n}.
  static Permutation cycle(int n, const std::vector<int>& elements);
  // n -> n + 1 (mod N), i.e. the cycle (1 2 ... N).
  static Permutation shift(int n);

  int size() const noexcept { return static_cast<int>(image_.size()); }
  int operator()(int site) const;
  const std::vector<int>& image() const noexcept { return image_; }

  Permutation inverse() const;
  // Same permutation on {1..n}, n >= size(), fixing the new points.
  Permutation extended(int n) const;
  bool is_identity() const noexcept;
  int order() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

// (g * h)(n) = g(h(n)).
Permutation operator*(const Permutation& g, const Permutation& h);

// {n : g(n) != n}, ascending.
std::vector<int> support(const Permutation& g);

// All n! permutations of {1..n} in lexicographic order of their image arrays
// (identity first). n <= 6.
std::vector<Permutation> enumerate_group(int n);

// Finite list of permutations with lookup. Closure is not required at
// construction; `is_closed` reports it.
class PermutationGroup {
 public:
  explicit PermutationGroup(std::vector<Permutation> elements);

  // S_degree acting on the first `degree` of `sites` sites.
  static PermutationGroup symmetric(int degree, int sites);
  // {e, g, g^2, ..., g^(order-1)}.
  static PermutationGroup cyclic(const Permutation& generator);

  std::size_t size() const noexcept { return elements_.size(); }
  int sites() const noexcept { return sites_; }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const Permutation& operator[](std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> index_of(const Permutation& g) const;
  bool contains(const Permutation& g) const { return index_of(g).has_value(); }
  bool is_closed() const;

 private:
  std::vector<Permutation> elements_;
  std::map<std::vector<int>, std::size_t> index_;
  int sites_ = 0;
};

// Operator on a window.
class LocalOperator {
 public:
  LocalOperator(Window window, CMatrix matrix);

  static LocalOperator identity(const Window& window);
  static LocalOperator zero(const Window& window);

  const Window& window() const noexcept { return window_; }
  const CMatrix& matrix() const noexcept { return m_; }
  LocalOperator adjoint() const { return {window_, m_.adjoint()}; }

 private:
  Window window_;
  CMatrix m_;
};

LocalOperator operator*(const LocalOperator& a, const LocalOperator& b);
LocalOperator operator+(const LocalOperator& a, const LocalOperator& b);
LocalOperator operator-(const LocalOperator& a, const LocalOperator& b);
LocalOperator operator*(Complex s, const LocalOperator& a);

// I^{(n-1)} (x) b (x) I^{(N-n)}.
LocalOperator embed(const Window& window, int site, const CMatrix& b);
// K (d^2 x d^2) placed on sites (n, n + 1).
LocalOperator embed_pair(const Window& window, int site, const CMatrix& k);
// a (x) I on a window with more sites and the same local dimension.
LocalOperator extend(const LocalOperator& a, const Window& larger);

// Basis map of P_g: P_g e_i = e_{map[i]}. P_g moves the tensor factor at
// site n to site g(n).
std::vector<Eigen::Index> permutation_index_map(const Permutation& g,
                                                const Window& window);
CMatrix permutation_unitary(const Permutation& g, const Window& window);

// P_g a P_g*.
LocalOperator act(const Permutation& g, const LocalOperator& a);
// P_g* a P_g = act(g^{-1}, a).
LocalOperator act_inverse(const Permutation& g, const LocalOperator& a);

}  // namespace quasinv
