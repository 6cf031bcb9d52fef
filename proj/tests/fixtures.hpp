#pragma once

#include <string>
#include <vector>

#include "tempvote/core.hpp"

namespace tempvote::tests {

// Three agents agree on p1 in round one, then split over p1/p2/p3. p4 is
// never approved.
inline Instance popular_then_split() {
  return Instance::make({"p1", "p2", "p3", "p4"}, 2,
                        {{{0}, {0}}, {{0}, {1}}, {{0}, {2}}});
}

// Round one means nothing to anyone; round two splits the two agents.
inline Instance empty_first_round() {
  return Instance::make({"p1", "p2"}, 2, {{{}, {0}}, {{}, {1}}});
}

// Four agents with static tastes: two singleton camps plus a two-agent bloc
// behind p0.
inline Instance static_blocs() {
  return Instance::make({"p0", "p1", "p2"}, 4,
                        {{{1}, {1}, {1}, {1}},
                         {{2}, {2}, {2}, {2}},
                         {{0}, {0}, {0}, {0}},
                         {{0}, {0}, {0}, {0}}});
}

// Everyone approves p alone at every timestep; q exists but has no fans.
inline Instance unanimous(int n, int ell) {
  std::vector<ApprovalVector> approvals(n, ApprovalVector(ell, ApprovalSet{0}));
  return Instance::make({"p", "q"}, ell, std::move(approvals));
}

// Two agents locked on opposite projects at every timestep.
inline Instance two_static_singletons(int ell) {
  return Instance::make({"p", "q"}, ell,
                        {ApprovalVector(ell, ApprovalSet{0}), ApprovalVector(ell, ApprovalSet{1})});
}

template <typename E, typename F>
std::string message_of(F&& f) {
  try {
    f();
  } catch (const E& e) {
    return e.what();
  } catch (...) {
  }
  return {};
}

inline bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace tempvote::tests
