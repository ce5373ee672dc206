#pragma once

#include <array>
#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamcycle/graph.hpp"

namespace hamcycle {

/// Bags larger than this are rejected by the path-system DP.
inline constexpr int kMaxBag = 32;

/// Bucket + pairing of one partial path system, indexed by position in the
/// sorted bag. Degrees are packed two bits per position; `partner[i]` is the
/// position paired with i when deg(i) == 1, else -1.
struct State {
  std::uint64_t degrees = 0;
  std::array<std::int8_t, kMaxBag> partner;

  State() { partner.fill(-1); }

  int deg(int i) const { return static_cast<int>((degrees >> (2 * i)) & 3u); }
  void set_deg(int i, int d) {
    degrees = (degrees & ~(std::uint64_t{3} << (2 * i))) |
              (static_cast<std::uint64_t>(d) << (2 * i));
  }
  void pair(int a, int b) {
    partner[a] = static_cast<std::int8_t>(b);
    partner[b] = static_cast<std::int8_t>(a);
  }
  /// Number of positions with degree 1 (the ℓ of the bucket).
  int open_ends(int bag_size) const;

  friend auto operator<=>(const State&, const State&) = default;
  friend bool operator==(const State&, const State&) = default;
};

/// Append-only store of witness edge sets shared between states. A witness
/// is an id: -1 (empty), an edge node extending a parent witness, or a union
/// node of two disjoint witnesses.
class WitnessArena {
 public:
  using Id = std::int32_t;
  static constexpr Id kEmpty = -1;

  Id add_edge(Id parent, Edge e);
  Id merge(Id a, Id b);
  std::vector<Edge> collect(Id id) const;
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Id left;
    Id right;  // -1 for edge nodes
    Edge edge;
  };
  std::vector<Node> nodes_;
};

struct PartialTable {
  std::vector<Vertex> bag;            // sorted
  std::vector<State> states;
  std::vector<WitnessArena::Id> witness;  // parallel to states, witness mode only

  std::size_t size() const { return states.size(); }
  int position(Vertex v) const;
};

class TimeoutError : public std::runtime_error {
 public:
  TimeoutError() : std::runtime_error("time limit exceeded") {}
};

/// Wall-clock limit checked cooperatively between DP nodes.
struct Deadline {
  std::chrono::steady_clock::time_point at;

  static Deadline after(double seconds) {
    return {std::chrono::steady_clock::now() +
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(seconds))};
  }
  bool expired() const { return std::chrono::steady_clock::now() >= at; }
  void check() const {
    if (expired()) throw TimeoutError();
  }
};

/// Per-solve state shared by the transitions.
struct DpContext {
  int n = 0;
  bool keep_witnesses = true;
  WitnessArena arena;
  bool found = false;
  std::vector<Edge> cycle;  // completed cycle, witness mode only

  void complete(WitnessArena::Id w, std::optional<Edge> last = std::nullopt);
};

PartialTable transition_leaf(const DpContext& ctx);
PartialTable transition_introduce_vertex(PartialTable tbl, Vertex v);
PartialTable transition_introduce_edge(const PartialTable& tbl, Edge e,
                                       int subtree_count, DpContext& ctx);
PartialTable transition_forget(PartialTable tbl, Vertex v);
PartialTable transition_join(const PartialTable& a, const PartialTable& b,
                             int subtree_count, DpContext& ctx);

/// Sorts states canonically and drops duplicates, keeping the witness of
/// the first copy in input order.
void dedupe(PartialTable& tbl);

/// Checks that witness `idx` of `tbl` is a disjoint path family whose
/// degrees and endpoint pairing match its state and which covers every
/// forgotten vertex of a subtree with `subtree_vertices` vertices.
std::optional<std::string> check_witness(const PartialTable& tbl, std::size_t idx,
                                         const WitnessArena& arena, int subtree_vertices);

}  // namespace hamcycle
