#include "fixtures.hpp"

namespace oracle {

tempnet::Trace f1_trace() {
    tempnet::Trace trace;
    const std::pair<tempnet::NodeId, tempnet::NodeId> contacts[] = {{C, F}, {A, C}, {A, B}, {C, E},
                                                                   {E, F}, {B, D}, {D, E}};
    const tempnet::Seconds when[] = {0, 1, 1, 2, 3, 4, 5};
    for (std::size_t k = 0; k < std::size(contacts); ++k)
        trace.events.push_back({contacts[k].first, contacts[k].second, when[k], when[k] + 1});
    tempnet::sort_events(trace.events);
    trace.meta = {6, 0, 6, 1};
    trace.original_ids = {0, 1, 2, 3, 4, 5};
    return trace;
}

}  // namespace oracle
