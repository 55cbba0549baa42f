#include "starcut/pipeline.hpp"

#include <stdexcept>
#include <utility>

#include "starcut/sparsify.hpp"

namespace starcut {

DecompositionChoice select_decomposition(const WeightedGraph& g, double eps2) {
  Decomposition dec_exp = exp_decompose(g, eps2);
  Decomposition dec_bin = binary_decompose(g, eps2);
  PulseSchedule sched_exp = compile_decomposition(dec_exp);
  PulseSchedule sched_bin = compile_decomposition(dec_bin);

  DecompositionChoice choice;
  choice.pulses_exp = sched_exp.pulses.size();
  choice.pulses_binary = sched_bin.pulses.size();
  if (choice.pulses_binary < choice.pulses_exp) {
    choice.decomposition = std::move(dec_bin);
    choice.schedule = std::move(sched_bin);
  } else {
    choice.decomposition = std::move(dec_exp);
    choice.schedule = std::move(sched_exp);
  }
  choice.schedule_metrics = metrics(choice.schedule);
  return choice;
}

PipelineResult sparse_union_of_stars(const WeightedGraph& g, const PipelineParams& params) {
  PipelineResult result;
  result.seed = params.seed;
  result.q = params.q != 0
                 ? params.q
                 : sample_count_for_epsilon(g.vertex_count(), params.epsilon1, params.c0);
  result.sparsified = sparsify(g, result.q, params.seed);
  if (result.sparsified.empty())
    throw std::runtime_error("sparse_union_of_stars: sparsifier returned an empty graph");
  result.choice = select_decomposition(result.sparsified, params.epsilon2);
  result.effective = result.choice.decomposition.effective_graph();
  return result;
}

}  // namespace starcut
