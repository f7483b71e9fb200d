#pragma once

// Places where the published expressions disagree with what the simulation
// computes. Every entry carries a residual computed at report time.

#include <string>
#include <vector>

namespace rsp {

struct Discrepancy {
  std::string id;
  std::string summary;
  double residual;  // size of the disagreement; 0 would mean none
  std::string detail;
};

std::vector<Discrepancy> discrepancy_report();

std::string format_report(const std::vector<Discrepancy>& entries);

}  // namespace rsp
