#pragma once

namespace ontolex {

// Selects between the OpenMP kernel and the serial reference path. Both
// must return identical results; the serial path is what tests trust.
enum class Execution { serial, parallel };

// Number of OpenMP threads the parallel path will use (1 without OpenMP).
int max_threads();

}  // namespace ontolex
