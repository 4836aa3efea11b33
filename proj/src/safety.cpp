#include "safeflow/safety.hpp"

#include <stdexcept>
#include <string>

namespace safeflow {

namespace {

Excess as_excess(Flow f) { return static_cast<Excess>(f); }

}  // namespace

Excess excess_flow(const FlowGraph& graph, const FlowAggregates& agg, std::span<const EdgeId> path) {
  check_path(graph, path);
  Excess total = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Edge& e = graph.edge(path[i]);
    total += as_excess(e.weight);
    if (i > 0) total -= as_excess(agg.f_out(e.tail));
  }
  return total;
}

Excess excess_flow_converging(const FlowGraph& graph, const FlowAggregates& agg,
                              std::span<const EdgeId> path) {
  check_path(graph, path);
  Excess total = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Edge& e = graph.edge(path[i]);
    total += as_excess(e.weight);
    if (i + 1 < path.size()) total -= as_excess(agg.f_in(e.head));
  }
  return total;
}

bool is_w_safe(const FlowGraph& graph, const FlowAggregates& agg, std::span<const EdgeId> path,
               Excess w) {
  if (w <= 0) throw std::invalid_argument("safety weight must be positive");
  return excess_flow(graph, agg, path) >= w;
}

Verification verify_path(const FlowGraph& graph, const FlowAggregates& agg,
                         std::span<const EdgeId> path) {
  const Excess excess = excess_flow(graph, agg, path);
  return {excess > 0, excess};
}

SafetyWindow::SafetyWindow(const FlowGraph& graph, const FlowAggregates& agg,
                           std::span<const EdgeId> host, std::size_t index)
    : graph_(&graph), agg_(&agg), host_(host), left_(index), right_(index), excess_(0) {
  if (index >= host.size()) throw InvalidPathError("window index outside host path");
  excess_ = as_excess(graph.edge(host[index]).weight);
}

Excess SafetyWindow::excess_after_extend_right() const {
  if (!can_extend_right()) throw InvalidPathError("window already ends at the host end");
  const Edge& e = graph_->edge(host_[right_ + 1]);
  return excess_ - (as_excess(agg_->f_out(e.tail)) - as_excess(e.weight));
}

SafetyWindow& SafetyWindow::extend_right(EdgeId edge) {
  if (!can_extend_right() || host_[right_ + 1] != edge) {
    throw InvalidPathError("edge " + std::to_string(edge) + " does not continue the window");
  }
  if (graph_->edge(host_[right_]).head != graph_->edge(edge).tail) {
    throw InvalidPathError("host path is not contiguous at edge " + std::to_string(edge));
  }
  excess_ = excess_after_extend_right();
  ++right_;
  return *this;
}

SafetyWindow& SafetyWindow::extend_right() {
  if (!can_extend_right()) throw InvalidPathError("window already ends at the host end");
  return extend_right(host_[right_ + 1]);
}

SafetyWindow& SafetyWindow::extend_left() {
  if (!can_extend_left()) throw InvalidPathError("window already starts at the host start");
  const Edge& e = graph_->edge(host_[left_ - 1]);
  if (e.head != graph_->edge(host_[left_]).tail) {
    throw InvalidPathError("host path is not contiguous at edge " + std::to_string(host_[left_ - 1]));
  }
  excess_ -= as_excess(agg_->f_in(e.head)) - as_excess(e.weight);
  --left_;
  return *this;
}

SafetyWindow& SafetyWindow::shrink_left() {
  if (size() < 2) throw InvalidPathError("cannot shrink a single-edge window");
  const Edge& e = graph_->edge(host_[left_]);
  excess_ += as_excess(agg_->f_in(e.head)) - as_excess(e.weight);
  ++left_;
  return *this;
}

SafetyWindow& SafetyWindow::shrink_right() {
  if (size() < 2) throw InvalidPathError("cannot shrink a single-edge window");
  const Edge& e = graph_->edge(host_[right_]);
  excess_ += as_excess(agg_->f_out(e.tail)) - as_excess(e.weight);
  --right_;
  return *this;
}

}  // namespace safeflow
