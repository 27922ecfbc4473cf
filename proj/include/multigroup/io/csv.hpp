#pragma once

#include <string>
#include <vector>

#include "multigroup/dataset.hpp"
#include "multigroup/experiments/scenario.hpp"
#include "multigroup/group.hpp"
#include "multigroup/trace.hpp"

namespace multigroup::io {

// Round-trip-safe decimal formatting for doubles.
std::string format_double(double v);

// Dataset files: header row with one or more feature columns followed by a
// final "y" column.
core::Dataset read_dataset_csv(const std::string& path);
void write_dataset_csv(const std::string& path, const core::Dataset& d);

// Group files: header "id,lo,hi", one closed interval per row, ids 0..k-1.
core::GroupFamily read_groups_csv(const std::string& path);
void write_groups_csv(const std::string& path, const core::GroupFamily& fam);

// One row per recorded iteration.
void write_trace_csv(const std::string& path, const core::RunTrace& trace);

// Fixed schema: run_id,method,seed,n,lambda,sigma,eta,criterion,total_loss,
// worst_group_loss,worst_group_id,num_updates,wall_ms
void write_rows_csv(const std::string& path,
                    const std::vector<experiments::RunRow>& rows);
void write_aggregates_csv(
    const std::string& path,
    const std::vector<experiments::MethodAggregate>& aggregates);

void write_tune_csv(const std::string& path,
                    const std::vector<experiments::TuneRow>& table);

}  // namespace multigroup::io
