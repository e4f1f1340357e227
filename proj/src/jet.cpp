#include "futaki/jet.hpp"

#include <ostream>

namespace futaki {

Jet::Jet(Scalar value, Linear linear) : value_(std::move(value))
{
    for (auto& [v, c] : linear) {
        add_term(v, c);
    }
}

Jet Jet::var(const EpsVar& v)
{
    Jet j;
    j.linear_.emplace(v, Scalar(1));
    return j;
}

Scalar Jet::coeff(const EpsVar& v) const
{
    const auto it = linear_.find(v);
    return it == linear_.end() ? Scalar{} : it->second;
}

void Jet::add_term(const EpsVar& v, const Scalar& c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = linear_.try_emplace(v, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            linear_.erase(it);
        }
    }
}

Jet& Jet::operator+=(const Jet& o)
{
    value_ += o.value_;
    for (const auto& [v, c] : o.linear_) {
        add_term(v, c);
    }
    return *this;
}

Jet& Jet::operator-=(const Jet& o)
{
    value_ -= o.value_;
    for (const auto& [v, c] : o.linear_) {
        add_term(v, -c);
    }
    return *this;
}

Jet operator-(const Jet& a)
{
    Jet r;
    r -= a;
    return r;
}

Jet& Jet::operator*=(const Jet& o)
{
    // (x0 + x1)(y0 + y1) = x0 y0 + x0 y1 + y0 x1 + O(e^2)
    Jet result(value_ * o.value_);
    for (const auto& [v, c] : linear_) {
        result.add_term(v, c * o.value_);
    }
    for (const auto& [v, c] : o.linear_) {
        result.add_term(v, value_ * c);
    }
    *this = std::move(result);
    return *this;
}

Jet& Jet::operator/=(const Jet& o)
{
    if (o.value_.is_zero()) {
        throw SingularJet();
    }
    // 1/y = 1/y0 - y1/y0^2
    const Scalar inv = Scalar(1) / o.value_;
    Jet recip(inv);
    const Scalar inv_sq = inv * inv;
    for (const auto& [v, c] : o.linear_) {
        recip.add_term(v, -(c * inv_sq));
    }
    return *this *= recip;
}

Jet pow(const Jet& x, unsigned n)
{
    Jet r(1);
    for (unsigned k = 0; k < n; ++k) {
        r *= x;
    }
    return r;
}

std::string to_string(const Jet& x)
{
    std::string out = to_string(x.value());
    for (const auto& [v, c] : x.linear()) {
        out += " + (" + to_string(c) + ")*" + v.name();
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Jet& x) { return os << to_string(x); }

}  // namespace futaki
