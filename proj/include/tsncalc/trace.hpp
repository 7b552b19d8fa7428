#pragma once

#include "tsncalc/rational.hpp"

#include <stdexcept>
#include <vector>

namespace tsncalc {

class TraceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Packet {
    Rational time;    // seconds; arrival (or departure) instant of the last bit
    Rational length;  // bits

    friend bool operator==(const Packet&, const Packet&) = default;
};

// Marked point process (a(n), l(n)) for n = 1..N. Packet 0 is the virtual
// packet at time 0 with length 0. Used for both arrivals and departures.
class PacketTrace {
public:
    PacketTrace() = default;
    // Throws TraceError unless times are nonnegative and nondecreasing and
    // lengths are positive.
    explicit PacketTrace(std::vector<Packet> packets);

    std::size_t size() const { return packets_.size(); }
    bool empty() const { return packets_.empty(); }
    const std::vector<Packet>& packets() const { return packets_; }

    // 1-based access; n = 0 is the virtual packet.
    Rational time(std::size_t n) const { return n == 0 ? Rational(0) : packets_.at(n - 1).time; }
    Rational length(std::size_t n) const { return n == 0 ? Rational(0) : packets_.at(n - 1).length; }

    // L(n) = sum of l(m) for m < n.
    const Rational& cumulative_length(std::size_t n) const { return prefix_.at(n); }
    // L(m, n) = L(n) - L(m).
    Rational cumulative_length(std::size_t m, std::size_t n) const { return prefix_.at(n) - prefix_.at(m); }

    // A(t): bits of packets with time < t (left-continuous).
    Rational cumulative(const Rational& t) const;
    // A(t+): bits of packets with time <= t.
    Rational cumulative_right(const Rational& t) const;

    friend bool operator==(const PacketTrace& a, const PacketTrace& b) { return a.packets_ == b.packets_; }

private:
    std::vector<Packet> packets_;
    std::vector<Rational> prefix_{Rational(0), Rational(0)};  // L(0), L(1), ..., L(N + 1)
};

// Checks that `output` is a departure trace of `input`: same length, same
// packet lengths, d(n) >= a(n). Throws TraceError otherwise.
void require_matched(const PacketTrace& input, const PacketTrace& output);

}  // namespace tsncalc
