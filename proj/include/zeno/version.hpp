#pragma once

// Library version, surfaced in CLI provenance headers and --version output.
#define ZENO_LAB_VERSION "1.0.0"

namespace zeno {
inline constexpr const char* version() { return ZENO_LAB_VERSION; }
}  // namespace zeno
