// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "collision/bvh.hpp"

#include <algorithm>

namespace corsurf {
namespace {

// Boxes are padded so that faces touching within the plane tolerance are
// still paired up.
constexpr double kBoxPad = 1e-9;

Aabb merge(const Aabb& a, const Aabb& b) { return {min(a.lo, b.lo), max(a.hi, b.hi)}; }

}  // namespace

Bvh::Bvh(const TriangleMesh& mesh) {
  const std::size_t n = mesh.faces.size();
  boxes_.resize(n);
  std::vector<Vec3> centroids(n);
  for (std::size_t f = 0; f < n; ++f) {
    const Face& t = mesh.faces[f];
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    const Vec3 pad{kBoxPad, kBoxPad, kBoxPad};
    boxes_[f] = {min(min(a, b), c) - pad, max(max(a, b), c) + pad};
    centroids[f] = (a + b + c) / 3.0;
  }
  order_.resize(n);
  for (std::size_t f = 0; f < n; ++f) order_[f] = static_cast<std::uint32_t>(f);
  if (n > 0) {
    nodes_.reserve(2 * n / kLeafSize + 1);
    build(0, static_cast<std::uint32_t>(n), centroids);
  }
}

std::uint32_t Bvh::build(std::uint32_t first, std::uint32_t count, const std::vector<Vec3>& centroids) {
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  Aabb box = boxes_[order_[first]];
  Vec3 clo = centroids[order_[first]], chi = clo;
  for (std::uint32_t i = first; i < first + count; ++i) {
    box = merge(box, boxes_[order_[i]]);
    clo = min(clo, centroids[order_[i]]);
    chi = max(chi, centroids[order_[i]]);
  }
  nodes_[id].box = box;
  if (count <= kLeafSize) {
    nodes_[id].first = first;
    nodes_[id].count = count;
    return id;
  }
  const Vec3 extent = chi - clo;
  const int axis = extent.x >= extent.y && extent.x >= extent.z ? 0 : (extent.y >= extent.z ? 1 : 2);
  const std::uint32_t half = count / 2;
  auto begin = order_.begin() + first;
  std::nth_element(begin, begin + half, begin + count, [&](std::uint32_t a, std::uint32_t b) {
    const double ca = centroids[a][axis], cb = centroids[b][axis];
    return ca != cb ? ca < cb : a < b;
  });
  const std::uint32_t left = build(first, half, centroids);
  const std::uint32_t right = build(first + half, count - half, centroids);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Bvh::self_candidates() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  if (nodes_.empty()) return out;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    const Node& na = nodes_[a];
    const Node& nb = nodes_[b];
    if (a == b) {
      if (na.count > 0) {
        for (std::uint32_t i = na.first; i < na.first + na.count; ++i)
          for (std::uint32_t j = i + 1; j < na.first + na.count; ++j)
            if (boxes_[order_[i]].overlaps(boxes_[order_[j]]))
              out.emplace_back(std::min(order_[i], order_[j]), std::max(order_[i], order_[j]));
      } else {
        stack.emplace_back(na.left, na.left);
        stack.emplace_back(na.right, na.right);
        stack.emplace_back(na.left, na.right);
      }
      continue;
    }
    if (!na.box.overlaps(nb.box)) continue;
    if (na.count > 0 && nb.count > 0) {
      for (std::uint32_t i = na.first; i < na.first + na.count; ++i)
        for (std::uint32_t j = nb.first; j < nb.first + nb.count; ++j)
          if (boxes_[order_[i]].overlaps(boxes_[order_[j]]))
            out.emplace_back(std::min(order_[i], order_[j]), std::max(order_[i], order_[j]));
    } else if (nb.count > 0) {
      stack.emplace_back(na.left, b);
      stack.emplace_back(na.right, b);
    } else {
      stack.emplace_back(a, nb.left);
      stack.emplace_back(a, nb.right);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Bvh::candidates(const Bvh& other) const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  if (nodes_.empty() || other.nodes_.empty()) return out;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    const Node& na = nodes_[a];
    const Node& nb = other.nodes_[b];
    if (!na.box.overlaps(nb.box)) continue;
    if (na.count > 0 && nb.count > 0) {
      for (std::uint32_t i = na.first; i < na.first + na.count; ++i)
        for (std::uint32_t j = nb.first; j < nb.first + nb.count; ++j)
          if (boxes_[order_[i]].overlaps(other.boxes_[other.order_[j]]))
            out.emplace_back(order_[i], other.order_[j]);
    } else if (nb.count > 0) {
      stack.emplace_back(na.left, b);
      stack.emplace_back(na.right, b);
    } else {
      stack.emplace_back(a, nb.left);
      stack.emplace_back(a, nb.right);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace corsurf
