#pragma once

#include "cfdim/numerics/rational.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace cfdim {

// Non-empty finite sequence of partial quotients, each >= 1.
class DigitWord {
public:
    explicit DigitWord(std::vector<BigInt> digits);
    DigitWord(std::initializer_list<long> digits);

    std::size_t size() const { return digits_.size(); }
    const BigInt& operator[](std::size_t i) const { return digits_[i]; }
    const std::vector<BigInt>& digits() const { return digits_; }
    auto begin() const { return digits_.begin(); }
    auto end() const { return digits_.end(); }

    DigitWord appended(const BigInt& digit) const;
    DigitWord prefix(std::size_t length) const;
    bool starts_with(const DigitWord& other) const;

    // "[a1,a2,...]"
    std::string to_string() const;
    static DigitWord parse(const std::string& text);

    friend bool operator==(const DigitWord&, const DigitWord&) = default;

private:
    std::vector<BigInt> digits_;
};

} // namespace cfdim
