#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tldimer/rational.hpp"

namespace tldimer {

// Polynomial in the horizontal-dimer weight alpha, with arbitrary-precision
// integer coefficients stored by ascending degree. The zero polynomial is the
// empty coefficient vector; otherwise the leading coefficient is nonzero.
class AlphaPoly {
public:
    AlphaPoly() = default;
    explicit AlphaPoly(long v) {
        if (v != 0) c_.emplace_back(v);
    }
    explicit AlphaPoly(Int v) {
        if (v != 0) c_.push_back(std::move(v));
    }

    static AlphaPoly alpha() {
        AlphaPoly p;
        p.c_ = {Int(0), Int(1)};
        return p;
    }
    static AlphaPoly from_coeffs(std::vector<Int> c) {
        AlphaPoly p;
        p.c_ = std::move(c);
        p.strip();
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Int>& coeffs() const { return c_; }
    Int coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Int(0);
    }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
        return acc;
    }

    friend AlphaPoly operator+(const AlphaPoly& a, const AlphaPoly& b) {
        std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return from_coeffs(std::move(c));
    }
    friend AlphaPoly operator-(const AlphaPoly& a, const AlphaPoly& b) {
        std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return from_coeffs(std::move(c));
    }
    friend AlphaPoly operator*(const AlphaPoly& a, const AlphaPoly& b) {
        if (a.is_zero() || b.is_zero()) return AlphaPoly();
        std::vector<Int> c(a.c_.size() + b.c_.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return from_coeffs(std::move(c));
    }
    AlphaPoly& operator+=(const AlphaPoly& o) { return *this = *this + o; }
    AlphaPoly& operator-=(const AlphaPoly& o) { return *this = *this - o; }
    AlphaPoly& operator*=(const AlphaPoly& o) { return *this = *this * o; }
    friend bool operator==(const AlphaPoly& a, const AlphaPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const AlphaPoly& a, const AlphaPoly& b) { return !(a == b); }

    // e.g. "1 + 2*a^2"; "0" for the zero polynomial
    std::string str(const std::string& var = "a") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            std::string term = c_[k].get_str();
            if (k > 0) {
                if (term == "1")
                    term = var;
                else if (term == "-1")
                    term = "-" + var;
                else
                    term += "*" + var;
                if (k > 1) term += "^" + std::to_string(k);
            }
            if (!out.empty()) {
                if (!term.empty() && term[0] == '-')
                    out += " - " + term.substr(1);
                else
                    out += " + " + term;
            } else {
                out = term;
            }
        }
        return out;
    }

    // ascending-degree coefficients as decimal strings
    std::vector<std::string> coeff_strings() const {
        std::vector<std::string> out;
        out.reserve(c_.size());
        for (const auto& v : c_) out.push_back(v.get_str());
        return out;
    }

private:
    void strip() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

inline bool scalar_is_zero(const AlphaPoly& p) { return p.is_zero(); }

}  // namespace tldimer
