// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include "hystk/errors.hpp"
#include "hystk/geometry.hpp"

namespace hystk::geometry {

Signal::Signal(std::vector<double> times, std::vector<Vec> points)
    : times_(std::move(times)), points_(std::move(points))
{
    if (times_.empty() || times_.size() != points_.size())
        throw PreconditionViolation(
            "Signal: need matching, nonempty time and point lists");
    std::size_t const dim = points_.front().size();
    if (dim == 0)
        throw PreconditionViolation("Signal: points must have positive dimension");
    for (std::size_t i = 0; i < times_.size(); ++i)
    {
        if (!std::isfinite(times_[i]))
            throw PreconditionViolation("Signal: non-finite time");
        if (i > 0 && !(times_[i] > times_[i - 1]))
            throw PreconditionViolation("Signal: times must be strictly increasing");
        if (points_[i].size() != dim)
            throw DimensionMismatch("Signal: points of differing dimension");
    }
}

std::size_t Signal::segment_index(double t) const
{
    if (t < times_.front() || t > times_.back())
        throw PreconditionViolation("Signal: time outside domain");
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    return static_cast<std::size_t>(it - times_.begin()) - 1;
}

Vec Signal::at(double t) const
{
    std::size_t const k = segment_index(t);
    if (k + 1 >= times_.size())
        return points_.back();
    double const lam = (t - times_[k]) / (times_[k + 1] - times_[k]);
    Vec const& a = points_[k];
    Vec const& b = points_[k + 1];
    Vec p(a.size());
    for (std::size_t d = 0; d < p.size(); ++d)
        p[d] = a[d] + lam * (b[d] - a[d]);
    return p;
}

Signal Signal::truncated(double t) const
{
    std::size_t const k = segment_index(t);
    std::vector<double> ts(times_.begin(), times_.begin() + k + 1);
    std::vector<Vec> ps(points_.begin(), points_.begin() + k + 1);
    if (ts.back() < t)
    {
        ts.push_back(t);
        ps.push_back(at(t));
    }
    return Signal(std::move(ts), std::move(ps));
}

Signal Signal::reparameterized(std::span<double const> s_knots,
                               std::span<double const> t_knots) const
{
    if (s_knots.size() != t_knots.size() || s_knots.size() < 2)
        throw PreconditionViolation("reparameterized: need >= 2 matching knots");
    for (std::size_t i = 1; i < s_knots.size(); ++i)
        if (!(s_knots[i] > s_knots[i - 1]) || !(t_knots[i] > t_knots[i - 1]))
            throw PreconditionViolation(
                "reparameterized: time change must be strictly increasing");
    if (t_knots.front() != start_time() || t_knots.back() != end_time())
        throw PreconditionViolation(
            "reparameterized: time change must map onto the signal domain");

    std::vector<double> tv(times_);
    tv.insert(tv.end(), t_knots.begin(), t_knots.end());
    std::sort(tv.begin(), tv.end());
    tv.erase(std::unique(tv.begin(), tv.end()), tv.end());

    auto inverse = [&](double t) {
        auto it = std::upper_bound(t_knots.begin(), t_knots.end(), t);
        std::size_t k = static_cast<std::size_t>(it - t_knots.begin());
        if (k == 0)
            return s_knots.front();
        if (k >= t_knots.size())
            return s_knots.back();
        --k;
        double const lam = (t - t_knots[k]) / (t_knots[k + 1] - t_knots[k]);
        return s_knots[k] + lam * (s_knots[k + 1] - s_knots[k]);
    };

    std::vector<double> ss;
    std::vector<Vec> ps;
    for (double t : tv)
    {
        double const s = inverse(t);
        if (!ss.empty() && !(s > ss.back()))
            continue;
        ss.push_back(s);
        ps.push_back(at(t));
    }
    return Signal(std::move(ss), std::move(ps));
}

Signal Signal::without_samples(double from, double to) const
{
    std::vector<double> ts;
    std::vector<Vec> ps;
    for (std::size_t i = 0; i < times_.size(); ++i)
    {
        bool const edge = (i == 0 || i + 1 == times_.size());
        if (!edge && times_[i] >= from && times_[i] < to)
            continue;
        ts.push_back(times_[i]);
        ps.push_back(points_[i]);
    }
    return Signal(std::move(ts), std::move(ps));
}

}  // namespace hystk::geometry
