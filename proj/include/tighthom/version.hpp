#pragma once

namespace tighthom {

/// Library version reported in every serialized document.  Reports are
/// byte-deterministic for a fixed version, so bump this whenever any output
/// format or numeric convention changes.
inline constexpr const char* library_version = "1.0.0";

}  // namespace tighthom
