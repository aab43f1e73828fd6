#pragma once

#include "tempnet/trace.hpp"

namespace oracle {

// Six nodes A..F (ids 0..5), one contact per window with w = 1:
// C->F@0, A->C@1, A->B@1, C->E@2, E->F@3, B->D@4, D->E@5.
enum F1Node : tempnet::NodeId { A = 0, B, C, D, E, F };

tempnet::Trace f1_trace();

}  // namespace oracle
