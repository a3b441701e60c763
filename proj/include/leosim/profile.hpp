#ifndef LEOSIM_PROFILE_HPP
#define LEOSIM_PROFILE_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "leosim/constants.hpp"

namespace leosim {

struct ReservationConflict : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Piecewise-constant time-varying availability: a fixed capacity minus
/// the amounts of overlapping reservations. Used for link rates (Gb/s),
/// compute (GFLOPS), memory (GB) and energy budgets alike.
class ResourceProfile {
  public:
    struct Reservation {
        double start_s, end_s, amount;
    };

    ResourceProfile() = default;
    explicit ResourceProfile(double capacity, double horizon_s = kInf)
        : capacity_(capacity), horizon_s_(horizon_s) {}

    double capacity() const { return capacity_; }
    double horizon() const { return horizon_s_; }
    const std::vector<Reservation>& reservations() const { return reservations_; }

    double available(double t) const {
        double used = 0;
        for (const auto& r : reservations_) {
            if (r.start_s > t) break;
            if (t < r.end_s) used += r.amount;
        }
        return std::max(0.0, capacity_ - used);
    }

    /// Reserve `amount` over [start, end). Empty intervals are no-ops.
    /// Throws ReservationConflict if availability would go negative
    /// anywhere in the interval.
    void reserve(double start_s, double end_s, double amount) {
        if (start_s > end_s)
            throw std::domain_error("reserve: start must not exceed end");
        if (start_s == end_s || amount == 0) return;
        if (amount < 0) throw std::domain_error("reserve: negative amount");
        // Availability only changes at reservation edges.
        if (available(start_s) < amount) throw ReservationConflict("reservation overlap");
        for (const auto& r : reservations_)
            if (r.start_s > start_s && r.start_s < end_s && available(r.start_s) < amount)
                throw ReservationConflict("reservation overlap");
        Reservation nr{start_s, end_s, amount};
        reservations_.insert(
            std::upper_bound(reservations_.begin(), reservations_.end(), nr,
                             [](const Reservation& a, const Reservation& b) {
                                 return a.start_s < b.start_s;
                             }),
            nr);
    }

    /// Full-capacity reservation: availability is 0 during the interval.
    void reserve_exclusive(double start_s, double end_s) {
        reserve(start_s, end_s, capacity_);
    }

    /// Zeroes the remaining availability over [start, end): each
    /// piecewise segment gets a reservation for whatever is left.
    /// Throws ReservationConflict when the interval is non-empty and
    /// already has zero availability throughout (a pure double-booking).
    void occupy(double start_s, double end_s) {
        if (start_s > end_s)
            throw std::domain_error("occupy: start must not exceed end");
        if (start_s == end_s) return;
        std::vector<Reservation> adds;
        double cur = start_s;
        for (double bp : breakpoints_after(start_s)) {
            if (bp >= end_s) break;
            if (double a = available(cur); a > 0) adds.push_back({cur, bp, a});
            cur = bp;
        }
        if (double a = available(cur); a > 0) adds.push_back({cur, end_s, a});
        if (adds.empty())
            throw ReservationConflict("occupy: interval already fully reserved");
        for (const auto& r : adds) reserve(r.start_s, r.end_s, r.amount);
    }

    /// Exact integral of available() over [t, t+duration].
    double integrate(double t, double duration) const {
        if (duration <= 0) return 0;
        double end = t + duration, acc = 0, cur = t;
        for (double bp : breakpoints_after(t)) {
            if (bp >= end) break;
            acc += available(cur) * (bp - cur);
            cur = bp;
        }
        acc += available(cur) * (end - cur);
        return acc;
    }

    struct InversionResult {
        double duration_s = kInf;
        double stalled_s = 0;  // measure of zero-availability time inside the window
        bool feasible = false;
    };

    /// Smallest T with integral of available() over [t, t+T] == demand,
    /// walking the piecewise-constant segments exactly.
    InversionResult time_to_accumulate(double t, double demand) const {
        if (demand < 0) throw std::domain_error("time_to_accumulate: negative demand");
        InversionResult res;
        if (demand == 0) {
            res.duration_s = 0;
            res.feasible = true;
            return res;
        }
        double cur = t, remaining = demand, stalled = 0;
        auto bps = breakpoints_after(t);
        std::size_t i = 0;
        while (true) {
            double rate = available(cur);
            double seg_end = (i < bps.size()) ? bps[i] : horizon_s_;
            if (seg_end > horizon_s_) seg_end = horizon_s_;
            if (rate > 0 && remaining <= rate * (seg_end - cur)) {
                double need = remaining / rate;
                res.duration_s = cur + need - t;
                res.stalled_s = stalled;
                res.feasible = true;
                return res;
            }
            if (seg_end >= horizon_s_) {
                if (rate > 0 && horizon_s_ == kInf) {
                    res.duration_s = cur + remaining / rate - t;
                    res.stalled_s = stalled;
                    res.feasible = true;
                }
                return res;  // never reaches the demand within the horizon
            }
            if (rate <= 0)
                stalled += seg_end - cur;
            else
                remaining -= rate * (seg_end - cur);
            cur = seg_end;
            ++i;
        }
    }

  private:
    std::vector<double> breakpoints_after(double t) const {
        std::vector<double> bps;
        for (const auto& r : reservations_) {
            if (r.start_s > t) bps.push_back(r.start_s);
            if (r.end_s > t) bps.push_back(r.end_s);
        }
        std::sort(bps.begin(), bps.end());
        bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
        return bps;
    }

    double capacity_ = 0;
    double horizon_s_ = kInf;
    std::vector<Reservation> reservations_;  // sorted by start
};

}  // namespace leosim

#endif
