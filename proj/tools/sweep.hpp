#pragma once

#include <functional>
#include <string>
#include <vector>

namespace mzm::cli {

// "start:stop:step" (inclusive of stop within rounding) or a single number or
// a comma-separated list. Empty results throw std::invalid_argument.
std::vector<double> parse_range(const std::string& text);

// 12 significant digits, fixed formatting for byte-stable CSV output
std::string fmt_num(double x);

// Worker count from MZM_WORKERS, defaulting to hardware concurrency.
int worker_count();

// Runs task(i) for i in [0, n) on a pool; results are written by index so
// output order matches input order.
void parallel_for(int n, int workers, const std::function<void(int)>& task);

}  // namespace mzm::cli
