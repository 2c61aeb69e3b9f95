#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace qmachine {

// A direction on the unit sphere. Normalized at construction; the factory
// rejects near-zero input so every instance satisfies |v| = 1 within 1e-12.
class UnitVector3 {
public:
    static UnitVector3 normalized(double x, double y, double z) {
        const double n = std::sqrt(x * x + y * y + z * z);
        if (n < 1e-12) {
            throw std::invalid_argument("UnitVector3: cannot normalize near-zero vector");
        }
        return UnitVector3(x / n, y / n, z / n);
    }

    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }

    UnitVector3 operator-() const { return UnitVector3(-x_, -y_, -z_); }

    double dot(const UnitVector3& o) const {
        return x_ * o.x_ + y_ * o.y_ + z_ * o.z_;
    }

    bool operator==(const UnitVector3& o) const {
        return x_ == o.x_ && y_ == o.y_ && z_ == o.z_;
    }

private:
    UnitVector3(double x, double y, double z) : x_(x), y_(y), z_(z) {}
    double x_, y_, z_;
};

inline double angle_between(const UnitVector3& u, const UnitVector3& v) {
    return std::acos(std::clamp(u.dot(v), -1.0, 1.0));
}

// Orthonormal triad, e.g. a rotated copy of the coordinate axes.
struct Triad {
    std::array<UnitVector3, 3> axes;
};

} // namespace qmachine
