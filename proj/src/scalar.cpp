#include "futaki/scalar.hpp"

#include <cctype>

namespace futaki {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
            return false;
        }
    }
    return true;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) {
        s.remove_suffix(1);
    }
    return s;
}

BigInt parse_int(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw ParseError("not an exact rational: '" + std::string(whole) + "'");
    }
    BigInt v{std::string(s)};
    return negative ? BigInt(-v) : v;
}

}  // namespace

Rat parse_rat(std::string_view text)
{
    const std::string_view s = trim(text);
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const BigInt num = parse_int(s.substr(0, slash), text);
        const std::string_view den_text = s.substr(slash + 1);
        if (!all_digits(den_text)) {
            throw ParseError("bad denominator in '" + std::string(text) + "'");
        }
        const BigInt den(std::string{den_text});
        if (den == 0) {
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        }
        return Rat(num, den);
    }
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        const std::string_view frac = s.substr(dot + 1);
        if (!frac.empty() && !all_digits(frac)) {
            throw ParseError("not an exact decimal: '" + std::string(text) + "'");
        }
        bool negative = false;
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
            negative = int_part.front() == '-';
            int_part.remove_prefix(1);
        }
        if (int_part.empty() && frac.empty()) {
            throw ParseError("not a number: '" + std::string(text) + "'");
        }
        const BigInt whole = int_part.empty() ? BigInt(0) : parse_int(int_part, text);
        const BigInt digits = frac.empty() ? BigInt(0) : BigInt(std::string(frac));
        const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
        Rat v = Rat(whole) + Rat(digits, scale);
        return negative ? Rat(-v) : v;
    }
    return Rat(parse_int(s, text));
}

std::string to_string(const Rat& q)
{
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

double to_double(const Rat& q) { return q.convert_to<double>(); }

std::complex<double> Scalar::to_complex() const { return {to_double(re_), to_double(im_)}; }

Scalar& Scalar::operator+=(const Scalar& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    Rat re = re_ * o.re_ - im_ * o.im_;
    Rat im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    const Rat n = o.norm();
    if (n == 0) {
        throw std::domain_error("division by zero scalar");
    }
    Rat re = (re_ * o.re_ + im_ * o.im_) / n;
    Rat im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string to_string(const Scalar& s)
{
    if (s.is_real()) {
        return to_string(s.re());
    }
    std::string out;
    if (s.re() != 0) {
        out = to_string(s.re());
        out += s.im() > 0 ? "+" : "-";
        out += to_string(Rat(abs(s.im())));
    } else {
        out = to_string(s.im());
    }
    return out + "i";
}

Scalar parse_scalar(std::string_view text)
{
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        return Scalar(parse_rat(text));
    }
    return {parse_rat(text.substr(0, comma)), parse_rat(text.substr(comma + 1))};
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << to_string(s); }

}  // namespace futaki
