// Copyright 2026 The funqg Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reverse-mode differentiation over a fixed set of dense operations.
//
// Every operation appends a node holding its value and a closure that maps
// the node's gradient to gradients of its inputs. backward() walks the nodes
// in reverse and finally adds parameter gradients into their ParamStore.

#ifndef FUNQG_NN_TAPE_HPP
#define FUNQG_NN_TAPE_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "funqg/error.hpp"
#include "funqg/graph.hpp"
#include "funqg/nn/param_store.hpp"

namespace funqg::nn {

struct Var {
  int id = -1;
};

template <typename Scalar>
class Tape {
 public:
  using Matrix = RowMatrix<Scalar>;
  using Backward = std::function<void(Tape&, const Matrix&)>;

  Var constant(Matrix value) { return push(std::move(value), {}, "constant"); }

  /// Leaf whose gradient flows into store[index].grad on backward().
  Var parameter(ParamStore<Scalar>& store, int index) {
    Var v = push(store[index].value, {}, store[index].name);
    nodes_[v.id].store = &store;
    nodes_[v.id].param = index;
    return v;
  }

  /// Appends an op result. Throws kNonFiniteValue if any entry is NaN/Inf.
  Var push(Matrix value, Backward backward, const char* op) {
    return push(std::move(value), std::move(backward), std::string(op));
  }
  Var push(Matrix value, Backward backward, const std::string& op) {
    if (!value.allFinite()) throw Error(ErrorCode::kNonFiniteValue, "non-finite output of " + op);
    Node n;
    n.value = std::move(value);
    n.backward = std::move(backward);
    nodes_.push_back(std::move(n));
    return {static_cast<int>(nodes_.size()) - 1};
  }

  const Matrix& value(Var v) const { return nodes_.at(v.id).value; }
  /// Gradient of the last backward() target; zero-sized if none reached v.
  const Matrix& grad(Var v) const { return nodes_.at(v.id).grad; }

  /// Adds `delta` into v's gradient.
  void accumulate(Var v, const Matrix& delta) {
    Node& n = nodes_[v.id];
    if (n.grad.size() == 0) {
      n.grad = delta;
    } else {
      n.grad += delta;
    }
  }

  /// Gradient of the scalar `loss` with respect to every node.
  void backward(Var loss) {
    if (value(loss).rows() != 1 || value(loss).cols() != 1) {
      throw Error(ErrorCode::kShapeMismatch, "backward target must be 1x1");
    }
    for (Node& n : nodes_) n.grad.resize(0, 0);
    nodes_[loss.id].grad = Matrix::Ones(1, 1);
    for (int i = loss.id; i >= 0; --i) {
      Node& n = nodes_[i];
      if (n.grad.size() == 0) continue;
      if (n.backward) {
        const Matrix g = n.grad;  // closure may grow other nodes' grads only
        n.backward(*this, g);
      }
      if (n.store != nullptr) (*n.store)[n.param].grad += n.grad;
    }
  }

  int size() const { return static_cast<int>(nodes_.size()); }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    Backward backward;
    ParamStore<Scalar>* store = nullptr;
    int param = -1;
  };
  std::vector<Node> nodes_;
};

}  // namespace funqg::nn

#endif  // FUNQG_NN_TAPE_HPP
