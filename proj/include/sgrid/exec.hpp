#pragma once

namespace sgrid {

/// Selects between the OpenMP kernel and its serial reference. Both produce
/// bit-identical results.
enum class Exec { Serial, Parallel };

}  // namespace sgrid
