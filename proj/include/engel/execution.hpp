#pragma once

namespace engel {

// Kernels that have an OpenMP path keep a serial reference path with
// identical, deterministic output.
enum class Execution { serial, parallel };

}  // namespace engel
