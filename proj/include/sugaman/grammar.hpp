#pragma once

#include "sugaman/model.hpp"
#include "sugaman/navigation.hpp"

#include <string>
#include <vector>

namespace sugaman {

/// Ordered sentences: general description (S1-S6) and navigation (S7-S9).
struct Description {
  std::vector<std::string> gd;
  std::vector<std::string> nv;
};

/// S1 once, then S2..S6 per room in ascending id. S6 is omitted for rooms
/// without decors.
std::vector<std::string> synthesize_gd(const SemanticModel& model);

/// S7 per route segment (10 px = 1 step), S8 after each room's route, S9
/// when the next room is a dead end.
std::vector<std::string> synthesize_nv(const TraversalPlan& plan, Scalar px_per_step = 10.0);

/// Headered plain text, one sentence per line; the navigation section is
/// omitted when empty.
std::string render(const Description& description);

/// Surface patterns of the nine sentence rules (anchored regular
/// expressions), index 0 = S1.
const std::vector<std::string>& sentence_rule_patterns();

/// 1..9 when the sentence matches exactly one rule pattern, 0 otherwise.
int match_rule(const std::string& sentence);

int steps_for_distance(Scalar pixels, Scalar px_per_step = 10.0);  // at least 1 when moving

}  // namespace sugaman
