#pragma once

#include <cstdint>
#include <vector>

#include "pbis/graph_model.hpp"

namespace pbis {

using Message = std::int8_t;  // -1, 0, +1

// Clamp to [-1, 1].
constexpr Message psi(long long x) {
  return static_cast<Message>(x > 1 ? 1 : (x < -1 ? -1 : x));
}

// -1 iff x <= -1; ties go to +1.
constexpr Message psi_tilde(long long x) { return x <= -1 ? Message{-1} : Message{1}; }

// Warning Propagation state: msg[e] is the message travelling along the
// directed edge e = (v -> w).
struct MessageState {
  std::size_t t = 0;
  std::vector<Message> msg;

  friend bool operator==(const MessageState&, const MessageState&) = default;
};

MessageState init_messages(const Graph& g, const FrozenAssignment& f);

// One synchronous round: every vertex sends each neighbour the clamped sum
// of the messages it received from its other neighbours. `threads` splits
// the vertex range; the result does not depend on it.
MessageState wp_step(const Graph& g, const MessageState& s, unsigned threads = 1);

// Variant in which vertices of `f` keep broadcasting their frozen value.
MessageState wp_step_clamped(const Graph& g, const MessageState& s, const FrozenAssignment& f,
                             unsigned threads = 1);

MessageState wp_run(const Graph& g, const FrozenAssignment& f, long long rounds,
                    unsigned threads = 1);
MessageState wp_run_clamped(const Graph& g, const FrozenAssignment& f, long long rounds,
                            unsigned threads = 1);

// Sum of messages arriving at v.
long long vertex_field(const Graph& g, const MessageState& s, Vertex v);

// Half the number of (v, w) with w adjacent to v whose message to v is the
// opposite of psi_tilde(field of v).
double bisection_estimate(const Graph& g, const MessageState& s);

struct EstimatePoint {
  std::size_t t = 0;
  double estimate = 0.0;
  double normalized = 0.0;  // estimate / n
};

// Estimates after rounds 0, 1, ..., rounds.
std::vector<EstimatePoint> estimate_trace(const Graph& g, const FrozenAssignment& f,
                                          long long rounds, unsigned threads = 1);

// Number of edges whose endpoints get different spins.
std::size_t cut_width(const Graph& g, const Assignment& tau);

}  // namespace pbis
