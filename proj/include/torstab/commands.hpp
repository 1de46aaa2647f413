#pragma once

#include "torstab/json_io.hpp"

namespace torstab {

/// Runs one request {"command": name, "d": n, ...} and returns the result
/// object (always carrying a "schema" key). Throws Error.
Json run_request(const Json& request);

/// Never throws: {"ok": true, "result": ...} or
/// {"ok": false, "error": {"name", "code", "message"}}.
Json run_request_safe(const Json& request);

}  // namespace torstab
