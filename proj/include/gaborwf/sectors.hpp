#pragma once

#include "gaborwf/common.hpp"

#include <set>
#include <sstream>

namespace gaborwf
{
    /// K angular sectors of the phase plane. Sector i is the half-open arc
    /// (2πi/K, 2π(i+1)/K]: a point exactly on a boundary belongs to the sector
    /// below it (cyclically), which keeps the partition invariant under z ↦ -z.
    class SectorPartition
    {
    public:
        explicit SectorPartition(int k_sectors = 72) : k_(k_sectors)
        {
            if (k_ < 4 || k_ % 2 != 0)
                throw InvalidArgument("sector count K must be even and >= 4");
        }

        int k() const noexcept { return k_; }
        double width() const noexcept { return 2 * pi<double> / k_; }

        /// Angle θ ∈ [0, 2π) of (x, ξ).
        static double angle(double x, double xi)
        {
            double th = std::atan2(xi, x);
            if (th < 0)
                th += 2 * pi<double>;
            return th;
        }

        int sector_of_angle(double theta) const
        {
            const double t = theta / width();
            const double r = std::round(t);
            long s = std::abs(t - r) < 1e-9 ? static_cast<long>(r) - 1 : static_cast<long>(std::floor(t));
            s %= k_;
            if (s < 0)
                s += k_;
            return static_cast<int>(s);
        }

        int sector_of(double x, double xi) const { return sector_of_angle(angle(x, xi)); }

        /// Sectors whose closed arc contains the direction θ (one, or two on a boundary).
        std::vector<int> sectors_touching(double theta) const
        {
            const double t = theta / width();
            const double r = std::round(t);
            if (std::abs(t - r) < 1e-9)
            {
                const int hi = static_cast<int>(((static_cast<long>(r) % k_) + k_) % k_);
                return {(hi + k_ - 1) % k_, hi};
            }
            return {sector_of_angle(theta)};
        }

        bool operator==(const SectorPartition& o) const noexcept { return k_ == o.k_; }

    private:
        int k_;
    };

    /// A set of sector indices of a partition with K sectors.
    class SectorSet
    {
    public:
        SectorSet() : k_(72) {}
        explicit SectorSet(int k) : k_(k) {}
        SectorSet(int k, std::initializer_list<int> indices) : k_(k)
        {
            for (int i : indices)
                insert(i);
        }
        template <typename It> SectorSet(int k, It first, It last) : k_(k)
        {
            for (; first != last; ++first)
                insert(*first);
        }

        int k() const noexcept { return k_; }
        bool empty() const noexcept { return items_.empty(); }
        std::size_t size() const noexcept { return items_.size(); }
        bool contains(int i) const { return items_.count(normalize(i)) > 0; }
        void insert(int i) { items_.insert(normalize(i)); }
        std::vector<int> indices() const { return {items_.begin(), items_.end()}; }
        auto begin() const { return items_.begin(); }
        auto end() const { return items_.end(); }

        /// All sectors within `margin` steps (cyclically) of a member.
        SectorSet dilate(int margin) const
        {
            SectorSet out(k_);
            for (int i : items_)
                for (int d = -margin; d <= margin; ++d)
                    out.insert(i + d);
            return out;
        }

        bool is_subset_of(const SectorSet& o) const
        {
            require_same_k(o);
            return std::all_of(items_.begin(), items_.end(), [&](int i) { return o.contains(i); });
        }

        SectorSet intersect(const SectorSet& o) const
        {
            require_same_k(o);
            SectorSet out(k_);
            for (int i : items_)
                if (o.contains(i))
                    out.insert(i);
            return out;
        }

        SectorSet unite(const SectorSet& o) const
        {
            require_same_k(o);
            SectorSet out = *this;
            for (int i : o.items_)
                out.insert(i);
            return out;
        }

        SectorSet complement() const
        {
            SectorSet out(k_);
            for (int i = 0; i < k_; ++i)
                if (!contains(i))
                    out.insert(i);
            return out;
        }

        /// Cyclic shift of every index by `steps`.
        SectorSet rotate(int steps) const
        {
            SectorSet out(k_);
            for (int i : items_)
                out.insert(i + steps);
            return out;
        }

        bool operator==(const SectorSet& o) const { return k_ == o.k_ && items_ == o.items_; }

        void require_same_k(const SectorSet& o) const
        {
            if (k_ != o.k_)
                throw GridMismatch("sector sets use different partitions");
        }

        std::string to_string() const
        {
            std::ostringstream os;
            os << '{';
            bool first = true;
            for (int i : items_)
            {
                os << (first ? "" : ",") << i;
                first = false;
            }
            os << '}';
            return os.str();
        }

    private:
        int normalize(int i) const { return ((i % k_) + k_) % k_; }

        int k_;
        std::set<int> items_;
    };

    enum class SetRelation
    {
        subset,
        equal,
        neither
    };

    inline const char* to_string(SetRelation r)
    {
        switch (r)
        {
        case SetRelation::subset:
            return "subset";
        case SetRelation::equal:
            return "equal";
        case SetRelation::neither:
            return "neither";
        }
        return "neither";
    }

    /// equal: each set lies in the `margin`-dilation of the other; subset: only lhs in
    /// the dilation of rhs.
    inline SetRelation wf_compare(const SectorSet& lhs, const SectorSet& rhs, int margin = 1)
    {
        lhs.require_same_k(rhs);
        if (margin < 0)
            throw InvalidArgument("margin must be nonnegative");
        const bool l_in_r = lhs.is_subset_of(rhs.dilate(margin));
        const bool r_in_l = rhs.is_subset_of(lhs.dilate(margin));
        if (l_in_r && r_in_l)
            return SetRelation::equal;
        if (l_in_r)
            return SetRelation::subset;
        return SetRelation::neither;
    }

    /// Sectors touched by the directions ±θ for each θ (radians).
    inline SectorSet directions_to_sectors(const SectorPartition& part, std::initializer_list<double> thetas,
                                           bool antipodal = true)
    {
        SectorSet out(part.k());
        for (double th : thetas)
        {
            for (double t : {th, th + pi<double>})
            {
                double a = std::fmod(t, 2 * pi<double>);
                if (a < 0)
                    a += 2 * pi<double>;
                for (int i : part.sectors_touching(a))
                    out.insert(i);
                if (!antipodal)
                    break;
            }
        }
        return out;
    }

    /// Image of a sector set under a linear map of the plane: each sector is sampled
    /// at interior angles, mapped, and the sectors of the images are collected.
    inline SectorSet map_sectors(const SectorSet& s, const SectorPartition& part, const Eigen::Matrix2d& m,
                                 int samples_per_sector = 8)
    {
        SectorSet out(part.k());
        for (int i : s)
        {
            for (int q = 0; q < samples_per_sector; ++q)
            {
                const double th = part.width() * (i + (q + 0.5) / samples_per_sector);
                const Eigen::Vector2d v = m * Eigen::Vector2d(std::cos(th), std::sin(th));
                out.insert(part.sector_of(v[0], v[1]));
            }
        }
        return out;
    }
}  // namespace gaborwf
