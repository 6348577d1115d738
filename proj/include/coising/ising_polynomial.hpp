#pragma once

#include <map>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "coising/errors.hpp"

namespace coising {

using BigCount = boost::multiprecision::cpp_int;

/// Joint histogram of spin configurations by (coupling energy e, magnetization
/// m). The e key tracks only the pair term; the classical energy of a
/// configuration under unit couplings and unit field is e + m.
class IsingPolynomial {
  public:
    using Key = std::pair<int, int>; // (e, m)
    using Terms = std::map<Key, BigCount>;

    IsingPolynomial() = default;
    IsingPolynomial(int n, Terms terms) : n_(n), terms_(std::move(terms)) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second == 0)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    int n() const { return n_; }
    const Terms& terms() const { return terms_; }

    BigCount total() const {
        BigCount sum = 0;
        for (const auto& [key, count] : terms_) sum += count;
        return sum;
    }

    BigCount count(int e, int m) const {
        auto it = terms_.find({e, m});
        return it == terms_.end() ? BigCount(0) : it->second;
    }

    /// Image under the global spin flip: every m key negated, e fixed.
    IsingPolynomial reflect_m() const {
        Terms reflected;
        for (const auto& [key, count] : terms_) reflected[{key.first, -key.second}] = count;
        return IsingPolynomial(n_, std::move(reflected));
    }

    IsingPolynomial& operator+=(const IsingPolynomial& other) {
        for (const auto& [key, count] : other.terms_) terms_[key] += count;
        return *this;
    }

    friend bool operator==(const IsingPolynomial& a, const IsingPolynomial& b) = default;

  private:
    int n_ = 0;
    Terms terms_;
};

/// Product for graphs sharing one identified vertex: both factors are rooted
/// polynomials; the root spin is counted once, so m drops by 1 per product.
inline IsingPolynomial compose_rooted(const IsingPolynomial& p1, const IsingPolynomial& p2) {
    IsingPolynomial::Terms result;
    for (const auto& [k1, c1] : p1.terms())
        for (const auto& [k2, c2] : p2.terms()) result[{k1.first + k2.first, k1.second + k2.second - 1}] += c1 * c2;
    return IsingPolynomial(p1.n() + p2.n() - 1, std::move(result));
}

/// Product for disjoint unions: exponents add, nothing shared.
inline IsingPolynomial disjoint_product(const IsingPolynomial& p1, const IsingPolynomial& p2) {
    IsingPolynomial::Terms result;
    for (const auto& [k1, c1] : p1.terms())
        for (const auto& [k2, c2] : p2.terms()) result[{k1.first + k2.first, k1.second + k2.second}] += c1 * c2;
    return IsingPolynomial(p1.n() + p2.n(), std::move(result));
}

inline nlohmann::ordered_json polynomial_to_json(const IsingPolynomial& p) {
    nlohmann::ordered_json doc;
    doc["n"] = p.n();
    doc["total"] = p.total().str();
    nlohmann::ordered_json terms = nlohmann::ordered_json::object();
    for (const auto& [key, count] : p.terms())
        terms[std::to_string(key.first) + "," + std::to_string(key.second)] = count.str();
    doc["terms"] = std::move(terms);
    return doc;
}

inline IsingPolynomial polynomial_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("terms"))
        throw parse_error("polynomial json: expected object with n and terms");
    IsingPolynomial::Terms terms;
    for (const auto& [key, value] : doc["terms"].items()) {
        auto comma = key.find(',');
        if (comma == std::string::npos) throw parse_error("polynomial json: malformed key \"" + key + "\"");
        int e = std::stoi(key.substr(0, comma));
        int m = std::stoi(key.substr(comma + 1));
        terms[{e, m}] = BigCount(value.get<std::string>());
    }
    return IsingPolynomial(doc["n"].get<int>(), std::move(terms));
}

} // namespace coising
