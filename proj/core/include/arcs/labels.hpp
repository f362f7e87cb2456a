#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace arcs {

enum class Aspect { Practice, Belief };

/// Shared shape of both aspect label sets.
///
/// | Polarity | practice      | belief      | trajectory value |
/// |----------|---------------|-------------|------------------|
/// | Plus     | Active        | Positive    | +1               |
/// | Minus    | Inactive      | Negative    | -1               |
/// | Other    | OtherPractice | OtherBelief | 0                |
/// | None     | None          | None        | (omitted)        |
enum class Polarity { Plus, Minus, Other, None };

inline constexpr Polarity kAllPolarities[] = {Polarity::Plus, Polarity::Minus, Polarity::Other,
                                              Polarity::None};
inline constexpr Aspect kAllAspects[] = {Aspect::Belief, Aspect::Practice};

std::string_view aspect_name(Aspect aspect);
Aspect parse_aspect(std::string_view name);

/// Aspect-specific label name, e.g. (Practice, Plus) -> "Active".
std::string_view label_name(Aspect aspect, Polarity polarity);
Polarity parse_label_name(Aspect aspect, std::string_view name);

/// +1 / -1 / 0, or nullopt for None.
std::optional<int> trajectory_value(Polarity polarity);

struct LabelSource {
  enum class Kind { Oracle, Endpoint, Human, Gold };
  Kind kind = Kind::Oracle;
  std::string model_id;
  std::string template_id;

  bool operator==(const LabelSource&) const = default;
};

std::string_view source_kind_name(LabelSource::Kind kind);
LabelSource::Kind parse_source_kind(std::string_view name);

struct VoteTally {
  std::map<Polarity, int> counts;
  int parse_failures = 0;

  int total() const;
  bool operator==(const VoteTally&) const = default;
};

struct ValenceLabel {
  Polarity practice = Polarity::None;
  Polarity belief = Polarity::None;
  LabelSource source;
  std::optional<VoteTally> practice_votes;
  std::optional<VoteTally> belief_votes;

  Polarity get(Aspect aspect) const { return aspect == Aspect::Practice ? practice : belief; }
  void set(Aspect aspect, Polarity polarity) {
    (aspect == Aspect::Practice ? practice : belief) = polarity;
  }
  bool operator==(const ValenceLabel&) const = default;
};

}  // namespace arcs
