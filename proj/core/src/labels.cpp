#include "arcs/labels.hpp"

#include "arcs/error.hpp"

namespace arcs {

std::string_view aspect_name(Aspect aspect) {
  return aspect == Aspect::Practice ? "practice" : "belief";
}

Aspect parse_aspect(std::string_view name) {
  if (name == "practice") return Aspect::Practice;
  if (name == "belief") return Aspect::Belief;
  throw ParseError("unknown aspect '" + std::string(name) + "'");
}

std::string_view label_name(Aspect aspect, Polarity polarity) {
  switch (polarity) {
    case Polarity::Plus: return aspect == Aspect::Practice ? "Active" : "Positive";
    case Polarity::Minus: return aspect == Aspect::Practice ? "Inactive" : "Negative";
    case Polarity::Other: return aspect == Aspect::Practice ? "OtherPractice" : "OtherBelief";
    case Polarity::None: return "None";
  }
  return "None";
}

Polarity parse_label_name(Aspect aspect, std::string_view name) {
  for (Polarity p : kAllPolarities) {
    if (label_name(aspect, p) == name) return p;
  }
  throw ParseError("'" + std::string(name) + "' is not a " + std::string(aspect_name(aspect)) +
                   " label");
}

std::optional<int> trajectory_value(Polarity polarity) {
  switch (polarity) {
    case Polarity::Plus: return 1;
    case Polarity::Minus: return -1;
    case Polarity::Other: return 0;
    case Polarity::None: return std::nullopt;
  }
  return std::nullopt;
}

std::string_view source_kind_name(LabelSource::Kind kind) {
  switch (kind) {
    case LabelSource::Kind::Oracle: return "oracle";
    case LabelSource::Kind::Endpoint: return "endpoint";
    case LabelSource::Kind::Human: return "human";
    case LabelSource::Kind::Gold: return "gold";
  }
  return "oracle";
}

LabelSource::Kind parse_source_kind(std::string_view name) {
  if (name == "oracle") return LabelSource::Kind::Oracle;
  if (name == "endpoint") return LabelSource::Kind::Endpoint;
  if (name == "human") return LabelSource::Kind::Human;
  if (name == "gold") return LabelSource::Kind::Gold;
  throw ParseError("unknown label source '" + std::string(name) + "'");
}

int VoteTally::total() const {
  int sum = parse_failures;
  for (const auto& [label, count] : counts) sum += count;
  return sum;
}

}  // namespace arcs
