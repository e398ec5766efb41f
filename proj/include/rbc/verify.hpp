#pragma once

#include "rbc/jsonio.hpp"

namespace rbc {

/// Named verification suites behind the CLI `verify` command.  Each returns
/// a JSON report with a "verdict" field ("PASS"/"FAIL").
json verify_finite_torus(int q);
json verify_orthogonality(int q);
json verify_dl_formula(int q);
json verify_shintani(int q);
json verify_a_packet_values(int q);
json verify_jl_uniqueness(int q);

bool report_passed(const json& report);

} // namespace rbc
