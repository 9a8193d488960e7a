#pragma once

#include <span>
#include <string>
#include <vector>

#include "r0/trainer.hpp"

namespace r0 {

// %.17g: shortest round-trippable form is not needed, full precision is,
// and the same double always prints the same bytes.
std::string format_f64(double v);

// Header "# <comment>" lines, then column names, then rows. All numeric
// output goes through format_f64 so identical runs serialize identically.
void write_samples_csv(const std::string& path,
                       const std::vector<std::string>& comments, int dim,
                       const std::vector<std::vector<double>>& rows);

std::vector<std::vector<double>> read_samples_csv(const std::string& path);

// Columns: iter, then per term <label>_raw_norm and <label>_value, then
// reg_loss, reg_grad_norm, cos_reward_reg. Wall-clock timing is serialized
// separately (write_timing_csv) to keep this file run-to-run identical.
void write_runlog_csv(const std::string& path, const RunLog& log);

void write_timing_csv(const std::string& path, const RunLog& log);

}  // namespace r0
