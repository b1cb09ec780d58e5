#pragma once

namespace tc::harness {

/// Exit codes: 0 success, 1 acceptance failure, 2 configuration/domain error,
/// 3 resource budget exceeded, 4 I/O error.
int cli_main(int argc, char** argv);

}  // namespace tc::harness
