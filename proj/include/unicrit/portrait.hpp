#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unicrit/dynamics.hpp"

namespace unicrit {

// Functional digraph on PrePer(f, K): vertex i maps to vertex image[i].
struct Portrait {
  std::vector<FieldElement> vertices;  // canonical order
  std::vector<std::size_t> image;
};

struct SkeletonVertex {
  enum class Kind { Concrete, PreimageClass } kind = Kind::Concrete;
  std::optional<FieldElement> value;    // Concrete only
  std::size_t parent = 0;               // PreimageClass: index of the vertex it maps to
  std::vector<FieldElement> members;    // PreimageClass: the preimages it stands for
};

struct Skeleton {
  std::vector<SkeletonVertex> vertices;
  std::vector<std::size_t> image;  // out-edge of every vertex
};

enum class TableLabel {
  Empty,
  L1a,
  L1b,
  L1c,
  L1d,
  L1e,
  L11,
  L2a,
  L2b,
  L2c,
  L211,
  L22,
  L3,
  NotInTable
};

std::string label_name(TableLabel label);

struct Classification {
  TableLabel label = TableLabel::Empty;
  std::string reason;               // set for NotInTable
  bool small_d_observation = false;  // NotInTable for nonzero c
};

Portrait build_portrait(const UnicriticalMap& f, const Budget& budget = {});
Skeleton skeletonize(const Portrait& p, const UnicriticalMap& f, const Budget& budget = {});
Classification classify_skeleton(const Skeleton& s, const NumberField& K, bool c_is_zero = false);

struct StatementResult {
  bool applicable = false;
  bool holds = true;  // vacuously true when not applicable
};

struct Theorem1Report {
  bool period_at_most_3 = true;
  std::size_t max_cycle_length = 0;
  int height_vs_log3 = 0;  // sign of h(c) - log 3
  StatementResult power_form;
  std::optional<FieldElement> y;
  StatementResult roots_of_unity_only;
  std::vector<FieldElement> preperiodic;
};

Theorem1Report check_theorem1(const UnicriticalMap& f, const PlaceSet& S, const Budget& budget = {});

std::string portrait_dot(const Portrait& p, const std::string& gen = "a");
std::string skeleton_dot(const Skeleton& s, const std::string& gen = "a");

}  // namespace unicrit
