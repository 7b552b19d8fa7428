#include "tsncalc/trace.hpp"

#include <algorithm>
#include <string>

namespace tsncalc {

PacketTrace::PacketTrace(std::vector<Packet> packets) : packets_(std::move(packets)) {
    prefix_.reserve(packets_.size() + 2);
    for (std::size_t i = 0; i < packets_.size(); ++i) {
        const auto& p = packets_[i];
        if (p.time.sign() < 0) throw TraceError("packet " + std::to_string(i + 1) + " has negative time");
        if (p.length.sign() <= 0) throw TraceError("packet " + std::to_string(i + 1) + " has nonpositive length");
        if (i > 0 && p.time < packets_[i - 1].time)
            throw TraceError("packet times decrease at n = " + std::to_string(i + 1));
        prefix_.push_back(prefix_.back() + p.length);
    }
}

Rational PacketTrace::cumulative(const Rational& t) const {
    auto it = std::lower_bound(packets_.begin(), packets_.end(), t,
                               [](const Packet& p, const Rational& v) { return p.time < v; });
    return prefix_[static_cast<std::size_t>(std::distance(packets_.begin(), it)) + 1];
}

Rational PacketTrace::cumulative_right(const Rational& t) const {
    auto it = std::upper_bound(packets_.begin(), packets_.end(), t,
                               [](const Rational& v, const Packet& p) { return v < p.time; });
    return prefix_[static_cast<std::size_t>(std::distance(packets_.begin(), it)) + 1];
}

void require_matched(const PacketTrace& input, const PacketTrace& output) {
    if (input.size() != output.size())
        throw TraceError("input has " + std::to_string(input.size()) + " packets, output has " +
                         std::to_string(output.size()));
    for (std::size_t n = 1; n <= input.size(); ++n) {
        if (input.length(n) != output.length(n))
            throw TraceError("packet " + std::to_string(n) + " changes length between input and output");
        if (output.time(n) < input.time(n))
            throw TraceError("packet " + std::to_string(n) + " departs before it arrives");
    }
}

}  // namespace tsncalc
