#pragma once

// Line-oriented scripts chaining fibration loads and subtractions.
//
//   let <name> = fib <file>
//   let <name> = subtract <a> <b> groups <i,j:k,l;...> [lifts=coinciding] [assert-isomorphic]
//   expect <name> genus <g> signature <s> fibers <n>
//   result <name>
//
// Group indices are 1-based and refer to the current fiber list of each
// operand; unmatched fibers of the first operand keep their order.

#include "surfsig/fibration.hpp"

#include <map>
#include <optional>
#include <string>

namespace surfsig {

struct PipelineRun {
  std::map<std::string, FibrationRecord> values;
  std::string result;  // name given by the result line
  CheckReport expectations;

  const FibrationRecord& result_record() const { return values.at(result); }
};

/// Runs a pipeline; with genus set every fibration is stabilized to that fiber genus.
PipelineRun run_pipeline(std::string_view source, std::optional<Eigen::Index> genus = {}, Convention conv = {});

}  // namespace surfsig
