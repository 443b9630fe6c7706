#include "cfdim/cf/digit_word.hpp"

#include "cfdim/errors.hpp"

#include <algorithm>

namespace cfdim {

DigitWord::DigitWord(std::vector<BigInt> digits) : digits_(std::move(digits))
{
    if (digits_.empty()) throw DomainError("digit word must be non-empty");
    for (const auto& d : digits_)
        if (d < 1) throw DomainError("partial quotients must be >= 1, got " + d.get_str());
}

DigitWord::DigitWord(std::initializer_list<long> digits)
    : DigitWord(std::vector<BigInt>(digits.begin(), digits.end()))
{
}

DigitWord DigitWord::appended(const BigInt& digit) const
{
    std::vector<BigInt> d = digits_;
    d.push_back(digit);
    return DigitWord(std::move(d));
}

DigitWord DigitWord::prefix(std::size_t length) const
{
    if (length == 0 || length > digits_.size()) throw DomainError("prefix length out of range");
    return DigitWord(std::vector<BigInt>(digits_.begin(), digits_.begin() + static_cast<long>(length)));
}

bool DigitWord::starts_with(const DigitWord& other) const
{
    return other.size() <= size() && std::equal(other.begin(), other.end(), begin());
}

std::string DigitWord::to_string() const
{
    std::string s = "[";
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (i) s += ',';
        s += digits_[i].get_str();
    }
    return s + "]";
}

DigitWord DigitWord::parse(const std::string& text)
{
    std::string body = text;
    if (!body.empty() && body.front() == '[') body.erase(0, 1);
    if (!body.empty() && body.back() == ']') body.pop_back();
    std::vector<BigInt> d;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        const auto comma = body.find(',', pos);
        std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
        BigInt v;
        if (item.empty() || v.set_str(item, 10) != 0) throw DomainError("malformed digit word '" + text + "'");
        d.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return DigitWord(std::move(d));
}

} // namespace cfdim
