#pragma once

#include <string>
#include <vector>

#include "egw/json_io.hpp"

namespace egw {

// Exit code semantics: 0 verdict computed, 2 invalid input or cap hit,
// 3 failed internal postcondition (always a bug).
struct OpResult {
    int exit_code = 0;
    Json report;
};

std::vector<std::string> op_names();

// Dispatch a subcommand on an inline JSON config. Never throws; failures
// are encoded in the exit code and an "error" field. The report embeds the
// config echo.
OpResult run_op(const std::string& name, const Json& config);

}  // namespace egw
