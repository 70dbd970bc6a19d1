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

#include "quasinv/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace quasinv {

namespace {

Eigen::Index ipow(Eigen::Index base, int exp) {
  Eigen::Index r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void require_same_window(const LocalOperator& a, const LocalOperator& b) {
  if (!(a.window() == b.window())) {
    throw Error(ErrorCode::SizeMismatch, "operators live on different windows");
  }
}

}  // namespace

Window::Window(int local_dim, int sites) : d_(local_dim), n_(sites), dim_(1) {
  if (d_ < 2) throw Error(ErrorCode::InvalidArgument, "local dimension must be >= 2");
  if (n_ < 1) throw Error(ErrorCode::InvalidArgument, "window needs at least one site");
  for (int i = 0; i < n_; ++i) {
    dim_ *= d_;
    if (dim_ > kMaxDim) {
      throw Error(ErrorCode::WindowTooLarge,
                  std::to_string(d_) + "^" + std::to_string(n_) + " exceeds " +
                      std::to_string(kMaxDim));
    }
  }
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  const int n = static_cast<int>(image_.size());
  if (n < 1) throw Error(ErrorCode::NotBijection, "empty permutation");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : image_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)]) {
      throw Error(ErrorCode::NotBijection,
                  "image value " + std::to_string(v) + " invalid for size " +
                      std::to_string(n));
    }
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(int n, int a, int b) {
  if (a < 1 || a > n || b < 1 || b > n) {
    throw Error(ErrorCode::SiteOutOfRange, "transposition site out of range");
  }
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  std::swap(img[static_cast<std::size_t>(a - 1)], img[static_cast<std::size_t>(b - 1)]);
  return Permutation(std::move(img));
}

Permutation Permutation::cycle(int n, const std::vector<int>& elements) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const int from = elements[i];
    const int to = elements[(i + 1) % elements.size()];
    if (from < 1 || from > n) {
      throw Error(ErrorCode::SiteOutOfRange, "cycle element out of range");
    }
    img[static_cast<std::size_t>(from - 1)] = to;
  }
  return Permutation(std::move(img));
}

Permutation Permutation::shift(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) img[static_cast<std::size_t>(i - 1)] = i % n + 1;
  return Permutation(std::move(img));
}

int Permutation::operator()(int site) const {
  if (site < 1 || site > size()) {
    throw Error(ErrorCode::SiteOutOfRange, "site " + std::to_string(site));
  }
  return image_[static_cast<std::size_t>(site - 1)];
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) {
    inv[static_cast<std::size_t>(image_[i] - 1)] = static_cast<int>(i) + 1;
  }
  return Permutation(std::move(inv));
}

Permutation Permutation::extended(int n) const {
  if (n < size()) {
    throw Error(ErrorCode::SizeMismatch, "cannot shrink a permutation");
  }
  std::vector<int> img = image_;
  for (int i = size() + 1; i <= n; ++i) img.push_back(i);
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (image_[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

int Permutation::order() const {
  int k = 1;
  Permutation p = *this;
  while (!p.is_identity()) {
    p = p * *this;
    ++k;
  }
  return k;
}

Permutation operator*(const Permutation& g, const Permutation& h) {
  if (g.size() != h.size()) {
    throw Error(ErrorCode::SizeMismatch, "composing permutations of different sizes");
  }
  std::vector<int> img(static_cast<std::size_t>(g.size()));
  for (int n = 1; n <= g.size(); ++n) img[static_cast<std::size_t>(n - 1)] = g(h(n));
  return Permutation(std::move(img));
}

std::vector<int> support(const Permutation& g) {
  std::vector<int> s;
  for (int n = 1; n <= g.size(); ++n) {
    if (g(n) != n) s.push_back(n);
  }
  return s;
}

std::vector<Permutation> enumerate_group(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "group degree must be >= 1");
  if (n > 6) {
    throw Error(ErrorCode::GroupTooLarge,
                "S_" + std::to_string(n) + " exceeds 720 elements");
  }
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

PermutationGroup::PermutationGroup(std::vector<Permutation> elements)
    : elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "group must have at least one element");
  }
  sites_ = elements_.front().size();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].size() != sites_) {
      throw Error(ErrorCode::SizeMismatch, "group elements act on different sizes");
    }
    if (!index_.emplace(elements_[i].image(), i).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate group element");
    }
  }
}

PermutationGroup PermutationGroup::symmetric(int degree, int sites) {
  if (degree > sites) {
    throw Error(ErrorCode::SizeMismatch, "group degree exceeds the number of sites");
  }
  std::vector<Permutation> elems;
  for (const Permutation& g : enumerate_group(degree)) elems.push_back(g.extended(sites));
  return PermutationGroup(std::move(elems));
}

PermutationGroup PermutationGroup::cyclic(const Permutation& generator) {
  std::vector<Permutation> elems{Permutation::identity(generator.size())};
  Permutation p = generator;
  while (!p.is_identity()) {
    elems.push_back(p);
    p = p * generator;
  }
  return PermutationGroup(std::move(elems));
}

std::optional<std::size_t> PermutationGroup::index_of(const Permutation& g) const {
  const auto it = index_.find(g.image());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool PermutationGroup::is_closed() const {
  for (const Permutation& g : elements_) {
    for (const Permutation& h : elements_) {
      if (!contains(g * h)) return false;
    }
  }
  return true;
}

LocalOperator::LocalOperator(Window window, CMatrix matrix)
    : window_(window), m_(std::move(matrix)) {
  if (m_.rows() != window_.dim() || m_.cols() != window_.dim()) {
    throw Error(ErrorCode::SizeMismatch,
                "matrix is " + std::to_string(m_.rows()) + "x" +
                    std::to_string(m_.cols()) + ", window needs " +
                    std::to_string(window_.dim()));
  }
}

LocalOperator LocalOperator::identity(const Window& window) {
  return {window, quasinv::identity(window.dim())};
}

LocalOperator LocalOperator::zero(const Window& window) {
  return {window, CMatrix::Zero(window.dim(), window.dim())};
}

LocalOperator operator*(const LocalOperator& a, const LocalOperator& b) {
  require_same_window(a, b);
  return {a.window(), a.matrix() * b.matrix()};
}

LocalOperator operator+(const LocalOperator& a, const LocalOperator& b) {
  require_same_window(a, b);
  return {a.window(), a.matrix() + b.matrix()};
}

LocalOperator operator-(const LocalOperator& a, const LocalOperator& b) {
  require_same_window(a, b);
  return {a.window(), a.matrix() - b.matrix()};
}

LocalOperator operator*(Complex s, const LocalOperator& a) {
  return {a.window(), s * a.matrix()};
}

LocalOperator embed(const Window& window, int site, const CMatrix& b) {
  if (site < 1 || site > window.sites()) {
    throw Error(ErrorCode::SiteOutOfRange, "site " + std::to_string(site));
  }
  const int d = window.local_dim();
  if (b.rows() != d || b.cols() != d) {
    throw Error(ErrorCode::SizeMismatch, "single-site operator must be d x d");
  }
  const CMatrix left = quasinv::identity(ipow(d, site - 1));
  const CMatrix right = quasinv::identity(ipow(d, window.sites() - site));
  return {window, kron(kron(left, b), right)};
}

LocalOperator embed_pair(const Window& window, int site, const CMatrix& k) {
  if (site < 1 || site > window.sites() - 1) {
    throw Error(ErrorCode::SiteOutOfRange, "pair site " + std::to_string(site));
  }
  const int d = window.local_dim();
  if (k.rows() != d * d || k.cols() != d * d) {
    throw Error(ErrorCode::SizeMismatch, "two-site operator must be d^2 x d^2");
  }
  const CMatrix left = quasinv::identity(ipow(d, site - 1));
  const CMatrix right = quasinv::identity(ipow(d, window.sites() - site - 1));
  return {window, kron(kron(left, k), right)};
}

LocalOperator extend(const LocalOperator& a, const Window& larger) {
  if (larger.local_dim() != a.window().local_dim() ||
      larger.sites() < a.window().sites()) {
    throw Error(ErrorCode::SizeMismatch, "cannot extend to a smaller window");
  }
  const int extra = larger.sites() - a.window().sites();
  return {larger, kron(a.matrix(), quasinv::identity(ipow(larger.local_dim(), extra)))};
}

std::vector<Eigen::Index> permutation_index_map(const Permutation& g,
                                                const Window& window) {
  if (g.size() != window.sites()) {
    throw Error(ErrorCode::SizeMismatch, "permutation size differs from window sites");
  }
  const int n = window.sites();
  const Eigen::Index d = window.local_dim();
  std::vector<Eigen::Index> weight(static_cast<std::size_t>(n));
  for (int site = 1; site <= n; ++site) {
    weight[static_cast<std::size_t>(site - 1)] = ipow(d, n - site);
  }
  std::vector<Eigen::Index> map(static_cast<std::size_t>(window.dim()));
  for (Eigen::Index i = 0; i < window.dim(); ++i) {
    Eigen::Index j = 0;
    for (int site = 1; site <= n; ++site) {
      const Eigen::Index digit = (i / weight[static_cast<std::size_t>(site - 1)]) % d;
      j += digit * weight[static_cast<std::size_t>(g(site) - 1)];
    }
    map[static_cast<std::size_t>(i)] = j;
  }
  return map;
}

CMatrix permutation_unitary(const Permutation& g, const Window& window) {
  const auto map = permutation_index_map(g, window);
  CMatrix p = CMatrix::Zero(window.dim(), window.dim());
  for (Eigen::Index i = 0; i < window.dim(); ++i) p(map[static_cast<std::size_t>(i)], i) = 1.0;
  return p;
}

LocalOperator act(const Permutation& g, const LocalOperator& a) {
  const auto map = permutation_index_map(g, a.window());
  const Eigen::Index dim = a.window().dim();
  CMatrix out(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      out(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) = a.matrix()(i, j);
    }
  }
  return {a.window(), std::move(out)};
}

LocalOperator act_inverse(const Permutation& g, const LocalOperator& a) {
  const auto map = permutation_index_map(g, a.window());
  const Eigen::Index dim = a.window().dim();
  CMatrix out(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      out(i, j) = a.matrix()(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]);
    }
  }
  return {a.window(), std::move(out)};
}

}  // namespace quasinv
