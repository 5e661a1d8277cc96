#include "pbis/wp_engine.hpp"

#include <algorithm>
#include <thread>

namespace pbis {
namespace {

void check_state(const Graph& g, const MessageState& s) {
  if (s.msg.size() != g.num_directed_edges()) {
    throw InvalidArgument("message state does not match the graph");
  }
}

void check_frozen(const Graph& g, const FrozenAssignment& f) {
  if (f.num_vertices() != g.num_vertices()) {
    throw InvalidArgument("frozen assignment does not match the graph");
  }
}

template <typename Body>
void for_vertex_ranges(std::size_t n, unsigned threads, Body body) {
  const std::size_t parts = std::max<std::size_t>(1, std::min<std::size_t>(threads, n / 1024 + 1));
  if (parts == 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(parts);
  for (std::size_t k = 0; k < parts; ++k) {
    pool.emplace_back(body, n * k / parts, n * (k + 1) / parts);
  }
  for (auto& th : pool) th.join();
}

MessageState step_impl(const Graph& g, const MessageState& s, const FrozenAssignment* frozen,
                       unsigned threads) {
  check_state(g, s);
  MessageState next;
  next.t = s.t + 1;
  next.msg.assign(s.msg.size(), 0);
  const Message* in = s.msg.data();
  Message* out = next.msg.data();
  for_vertex_ranges(g.num_vertices(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t vi = lo; vi < hi; ++vi) {
      const auto v = static_cast<Vertex>(vi);
      const EdgeId b = g.out_begin(v);
      const EdgeId e_end = g.out_end(v);
      if (frozen != nullptr && frozen->contains(v)) {
        std::fill(out + b, out + e_end, frozen->value(v));
        continue;
      }
      long long total = 0;
      for (EdgeId e = b; e < e_end; ++e) total += in[g.reverse(e)];
      for (EdgeId e = b; e < e_end; ++e) out[e] = psi(total - in[g.reverse(e)]);
    }
  });
  return next;
}

}  // namespace

MessageState init_messages(const Graph& g, const FrozenAssignment& f) {
  check_frozen(g, f);
  MessageState s;
  s.msg.assign(g.num_directed_edges(), 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!f.contains(v)) continue;
    std::fill(s.msg.begin() + g.out_begin(v), s.msg.begin() + g.out_end(v), f.value(v));
  }
  return s;
}

MessageState wp_step(const Graph& g, const MessageState& s, unsigned threads) {
  return step_impl(g, s, nullptr, threads);
}

MessageState wp_step_clamped(const Graph& g, const MessageState& s, const FrozenAssignment& f,
                             unsigned threads) {
  check_frozen(g, f);
  return step_impl(g, s, &f, threads);
}

MessageState wp_run(const Graph& g, const FrozenAssignment& f, long long rounds,
                    unsigned threads) {
  if (rounds < 0) throw InvalidArgument("wp_run: negative number of rounds");
  MessageState s = init_messages(g, f);
  for (long long r = 0; r < rounds; ++r) s = wp_step(g, s, threads);
  return s;
}

MessageState wp_run_clamped(const Graph& g, const FrozenAssignment& f, long long rounds,
                            unsigned threads) {
  if (rounds < 0) throw InvalidArgument("wp_run_clamped: negative number of rounds");
  MessageState s = init_messages(g, f);
  for (long long r = 0; r < rounds; ++r) s = wp_step_clamped(g, s, f, threads);
  return s;
}

long long vertex_field(const Graph& g, const MessageState& s, Vertex v) {
  check_state(g, s);
  if (v >= g.num_vertices()) throw InvalidArgument("vertex_field: unknown vertex");
  long long total = 0;
  for (EdgeId e = g.out_begin(v); e < g.out_end(v); ++e) total += s.msg[g.reverse(e)];
  return total;
}

double bisection_estimate(const Graph& g, const MessageState& s) {
  check_state(g, s);
  std::size_t count = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    long long field = 0;
    for (EdgeId e = g.out_begin(v); e < g.out_end(v); ++e) field += s.msg[g.reverse(e)];
    const Message conflict = static_cast<Message>(-psi_tilde(field));
    for (EdgeId e = g.out_begin(v); e < g.out_end(v); ++e) {
      count += s.msg[g.reverse(e)] == conflict ? 1 : 0;
    }
  }
  return 0.5 * static_cast<double>(count);
}

std::vector<EstimatePoint> estimate_trace(const Graph& g, const FrozenAssignment& f,
                                          long long rounds, unsigned threads) {
  if (rounds < 0) throw InvalidArgument("estimate_trace: negative number of rounds");
  const double n = static_cast<double>(std::max<std::size_t>(1, g.num_vertices()));
  std::vector<EstimatePoint> trace;
  MessageState s = init_messages(g, f);
  for (long long r = 0;; ++r) {
    const double est = bisection_estimate(g, s);
    trace.push_back({s.t, est, est / n});
    if (r == rounds) break;
    s = wp_step(g, s, threads);
  }
  return trace;
}

std::size_t cut_width(const Graph& g, const Assignment& tau) {
  if (tau.size() != g.num_vertices()) throw InvalidArgument("cut_width: size mismatch");
  std::size_t cut = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    for (Vertex w : g.neighbors(v)) cut += (v < w && tau[v] != tau[w]) ? 1 : 0;
  }
  return cut;
}

}  // namespace pbis
