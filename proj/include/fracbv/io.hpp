#ifndef FRACBV_IO_HPP
#define FRACBV_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fracbv/func_repr.hpp"

namespace fracbv {

// 17 significant digits, "inf"/"-inf" for infinities.
std::string format_double(double x);

/**
 * Step CSV: header `x_right,value`, one row per level giving the level's
 * right end. An optional leading `-inf,L` row names the left tail; the
 * last row must be `+inf,R`.
 */
StepFunction read_step_csv(const std::filesystem::path& path);
StepFunction parse_step_csv(std::istream& in, const std::string& source = "<stream>");
void write_step_csv(std::ostream& out, const StepFunction& u);

// Header `x,value`.
void write_grid_csv(std::ostream& out, const GridFunction& u);

// Comma-separated list of reals, e.g. "0.25,0.5".
std::vector<double> parse_real_list(const std::string& text, const std::string& what);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace fracbv

#endif  // FRACBV_IO_HPP
