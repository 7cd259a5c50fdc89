#include "sugaman/grammar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <regex>
#include <sstream>

namespace sugaman {

namespace {

std::string determiner(const std::string& noun) {
  static const std::string vowels = "aeiou";
  return !noun.empty() && vowels.find(noun[0]) != std::string::npos ? "an" : "a";
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += (i + 1 == names.size()) ? " and " : ", ";
    out += names[i];
  }
  return out;
}

std::string format_area(Scalar area) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", area);
  return buf;
}

}  // namespace

std::vector<std::string> synthesize_gd(const SemanticModel& model) {
  std::vector<std::string> out;
  out.push_back("This floor plan has " + std::to_string(model.rooms.size()) + " rooms.");

  for (const Room& room : model.rooms) {
    const std::string name = room_label_name(room.label);
    if (name == std::string("?"))
      throw Error(ErrorCategory::render_error,
                  "room " + std::to_string(room.id) + " has no label");
    out.push_back("There is " + determiner(name) + " " + name + ".");
    out.push_back("It has an area of " + format_area(room.area_sqft) + " square feet.");

    if (room.neighbors.empty()) {
      out.push_back("It has no neighboring rooms.");
    } else {
      std::vector<std::string> names;
      for (int nb : room.neighbors) {
        const Room* other = model.find_room(nb);
        if (!other)
          throw Error(ErrorCategory::render_error,
                      "neighbor " + std::to_string(nb) + " missing from model");
        names.push_back(room_label_name(other->label));
      }
      const bool plural = names.size() > 1;
      out.push_back(std::string("Its neighboring room") + (plural ? "s" : "") +
                    (plural ? " are " : " is ") + join_names(names) + ".");
    }

    out.push_back(std::string("It is located in the ") + direction_name(room.global_dir) + ".");

    if (!room.decors.empty()) {
      // One clause per class present, ascending class code; DLOC from the
      // class's first instance.
      std::map<int, std::pair<int, Direction8>> by_class;  // code -> (count, first dir)
      for (const auto& d : room.decors) {
        auto [it, fresh] = by_class.try_emplace(static_cast<int>(d.cls), 0, d.dir);
        ++it->second.first;
      }
      std::string sentence = "This room has ";
      bool first = true;
      for (const auto& [code, info] : by_class) {
        if (!first) sentence += ", ";
        first = false;
        const auto cls = static_cast<DecorClass>(code);
        sentence += std::to_string(info.first) + " " + decor_class_display(cls) +
                    (info.first > 1 ? "s" : "") + " at the " + direction_name(info.second);
      }
      sentence += ".";
      out.push_back(std::move(sentence));
    }
  }
  return out;
}

int steps_for_distance(Scalar pixels, Scalar px_per_step) {
  if (pixels <= 1e-9) return 0;
  return std::max(1, static_cast<int>(std::floor(pixels / px_per_step + 0.5)));
}

std::vector<std::string> synthesize_nv(const TraversalPlan& plan, Scalar px_per_step) {
  std::vector<std::string> out;
  if (plan.entries.empty()) return out;
  for (size_t i = 0; i < plan.entries.size(); ++i) {
    const Route& route = plan.entries[i];
    for (size_t k = 0; k + 1 < route.waypoints.size(); ++k) {
      const Vec2& a = route.waypoints[k];
      const Vec2& b = route.waypoints[k + 1];
      const int steps = steps_for_distance((b - a).norm(), px_per_step);
      if (steps == 0) continue;
      const Direction8 dir = bin_direction(a, b, BinScheme::nonuniform());
      out.push_back("Go " + std::to_string(steps) + " steps in " +
                    std::string(direction_name(dir)) + " direction.");
    }
    out.push_back("There is a door and a room.");
    if (i + 1 < plan.entries.size() && plan.entries[i + 1].dead_end)
      out.push_back("You have to turn back.");
  }
  return out;
}

std::string render(const Description& description) {
  std::ostringstream out;
  out << "GENERAL DESCRIPTION\n";
  for (const auto& s : description.gd) out << s << '\n';
  if (!description.nv.empty()) {
    out << "NAVIGATION\n";
    for (const auto& s : description.nv) out << s << '\n';
  }
  return out.str();
}

const std::vector<std::string>& sentence_rule_patterns() {
  static const std::string dir =
      "(North|North East|East|South East|South|South West|West|North West)";
  static const std::string room_name = "(bedroom|bathroom|entry|kitchen|hall)";
  static const std::string clause = "[0-9]+ [a-z ]+ at the " + dir;
  static const std::vector<std::string> patterns = {
      R"(^This floor plan has [0-9]+ rooms\.$)",
      "^There is an? " + room_name + R"(\.$)",
      R"(^It has an area of [0-9]+\.[0-9]{2} square feet\.$)",
      "^(Its neighboring room (is|are) " + room_name + "|Its neighboring rooms are " +
          room_name + "(, " + room_name + ")* and " + room_name +
          R"(|It has no neighboring rooms)\.$)",
      "^It is located in the " + dir + R"(\.$)",
      "^This room has " + clause + "(, " + clause + R"()*\.$)",
      "^Go [0-9]+ steps in " + dir + R"( direction\.$)",
      R"(^There is a door and a room\.$)",
      R"(^You have to turn back\.$)",
  };
  return patterns;
}

int match_rule(const std::string& sentence) {
  static const std::vector<std::regex> compiled = [] {
    std::vector<std::regex> out;
    for (const auto& p : sentence_rule_patterns()) out.emplace_back(p);
    return out;
  }();
  int matched = 0;
  for (size_t i = 0; i < compiled.size(); ++i) {
    if (std::regex_match(sentence, compiled[i])) {
      if (matched) return 0;  // ambiguous
      matched = static_cast<int>(i) + 1;
    }
  }
  return matched;
}

}  // namespace sugaman
