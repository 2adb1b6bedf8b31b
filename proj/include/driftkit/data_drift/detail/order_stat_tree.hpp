// Copyright 2026, The driftkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>

#include "driftkit/numerics/rng.hpp"

namespace driftkit::data_drift::detail {

// Order-statistic treap over doubles (duplicates stored as separate nodes):
// insert, erase-one and rank queries in O(log n) expected. Priorities come
// from a deterministic counter, so behavior is reproducible.
class OrderStatTree {
 public:
  OrderStatTree() = default;

  void insert(double value) {
    root_ = insert_node(std::move(root_), make_node(value));
    ++size_;
  }

  // Removes one node holding value; false if absent.
  bool erase_one(double value) {
    bool erased = false;
    root_ = erase_node(std::move(root_), value, erased);
    if (erased) --size_;
    return erased;
  }

  // #{stored values <= value}.
  std::size_t rank_upper(double value) const {
    std::size_t rank = 0;
    const Node* node = root_.get();
    while (node != nullptr) {
      if (node->value <= value) {
        rank += count(node->left.get()) + 1;
        node = node->right.get();
      } else {
        node = node->left.get();
      }
    }
    return rank;
  }

  // #{stored values < value}.
  std::size_t rank_lower(double value) const {
    std::size_t rank = 0;
    const Node* node = root_.get();
    while (node != nullptr) {
      if (node->value < value) {
        rank += count(node->left.get()) + 1;
        node = node->right.get();
      } else {
        node = node->left.get();
      }
    }
    return rank;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  template <class F>
  void for_each_in_order(F&& fn) const {
    walk(root_.get(), fn);
  }

  void clear() {
    root_.reset();
    size_ = 0;
    priority_counter_ = 0;
  }

 private:
  struct Node {
    double value;
    std::uint64_t priority;
    std::size_t count = 1;
    std::unique_ptr<Node> left;
    std::unique_ptr<Node> right;
  };

  using NodePtr = std::unique_ptr<Node>;

  static std::size_t count(const Node* n) { return n == nullptr ? 0 : n->count; }

  static void pull(Node* n) { n->count = 1 + count(n->left.get()) + count(n->right.get()); }

  NodePtr make_node(double value) {
    auto node = std::make_unique<Node>();
    node->value = value;
    node->priority = numerics::substream_seed(0xa11ce, ++priority_counter_);
    return node;
  }

  static NodePtr rotate_right(NodePtr node) {
    NodePtr left = std::move(node->left);
    node->left = std::move(left->right);
    pull(node.get());
    left->right = std::move(node);
    pull(left.get());
    return left;
  }

  static NodePtr rotate_left(NodePtr node) {
    NodePtr right = std::move(node->right);
    node->right = std::move(right->left);
    pull(node.get());
    right->left = std::move(node);
    pull(right.get());
    return right;
  }

  static NodePtr insert_node(NodePtr node, NodePtr fresh) {
    if (node == nullptr) return fresh;
    if (fresh->value < node->value) {
      node->left = insert_node(std::move(node->left), std::move(fresh));
      pull(node.get());
      if (node->left->priority > node->priority) node = rotate_right(std::move(node));
    } else {
      node->right = insert_node(std::move(node->right), std::move(fresh));
      pull(node.get());
      if (node->right->priority > node->priority) node = rotate_left(std::move(node));
    }
    return node;
  }

  static NodePtr erase_node(NodePtr node, double value, bool& erased) {
    if (node == nullptr) return nullptr;
    if (value < node->value) {
      node->left = erase_node(std::move(node->left), value, erased);
    } else if (node->value < value) {
      node->right = erase_node(std::move(node->right), value, erased);
    } else {
      // Found: rotate down until a child slot frees up.
      if (node->left == nullptr) {
        erased = true;
        return std::move(node->right);
      }
      if (node->right == nullptr) {
        erased = true;
        return std::move(node->left);
      }
      if (node->left->priority > node->right->priority) {
        node = rotate_right(std::move(node));
        node->right = erase_node(std::move(node->right), value, erased);
      } else {
        node = rotate_left(std::move(node));
        node->left = erase_node(std::move(node->left), value, erased);
      }
    }
    if (node != nullptr) pull(node.get());
    return node;
  }

  template <class F>
  static void walk(const Node* node, F& fn) {
    if (node == nullptr) return;
    walk(node->left.get(), fn);
    fn(node->value);
    walk(node->right.get(), fn);
  }

  NodePtr root_;
  std::size_t size_ = 0;
  std::uint64_t priority_counter_ = 0;
};

}  // namespace driftkit::data_drift::detail
