#pragma once

#include <functional>

#include "helio2d/synth.hpp"

namespace helio2d {

struct StageRecord {
  int index = 0;
  double k = 0.0;
  int b = 0;
  int n1 = 0;
  double rho = 0.0;
  NewtonHistory history;
  ClosedCurve curve;  // reconstruction after this stage
};

struct RlaState {
  ClosedCurve current;
  std::vector<StageRecord> stages;
  bool failed = false;
  std::string failure;

  std::vector<int> iteration_counts() const {
    std::vector<int> out;
    for (const auto& s : stages) out.push_back(static_cast<int>(s.history.steps.size()));
    return out;
  }
};

// Recursive linearization: sweep the config's frequency ladder, warm-starting
// each stage's Newton solve from the previous reconstruction.
RlaState run_rla(const RlaConfig& config, const Dataset& data,
                 const ClosedCurve& initial,
                 const std::function<void(const StageRecord&)>& on_stage = {},
                 const ForwardOptions& fw = {});

}  // namespace helio2d
