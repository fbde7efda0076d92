#pragma once

#include <stdexcept>
#include <string>

namespace tradecast {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class MalformedRow : public Error {
public:
    MalformedRow(std::size_t row, const std::string& what)
        : Error("row " + std::to_string(row) + ": " + what), row_(row) {}
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

class MissingColumn : public Error {
public:
    explicit MissingColumn(const std::string& column)
        : Error("missing column: " + column) {}
};

class GapInYears : public Error {
public:
    explicit GapInYears(int year)
        : Error("no records for year " + std::to_string(year)), year_(year) {}
    int year() const { return year_; }

private:
    int year_;
};

class NegativeValue : public Error {
public:
    explicit NegativeValue(const std::string& what) : Error(what) {}
};

class MissingCell : public Error {
public:
    explicit MissingCell(const std::string& what) : Error(what) {}
};

class ZeroWorldTrade : public Error {
public:
    explicit ZeroWorldTrade(int year)
        : Error("world trade is zero in year " + std::to_string(year)) {}
};

class TooShort : public Error {
public:
    explicit TooShort(const std::string& what) : Error(what) {}
};

class RankDeficient : public Error {
public:
    explicit RankDeficient(const std::string& what) : Error(what) {}
};

class ConstantSeries : public Error {
public:
    ConstantSeries() : Error("series has zero variance") {}
};

class StillNonStationary : public Error {
public:
    explicit StillNonStationary(int max_d)
        : Error("series not stationary after " + std::to_string(max_d) + " differences") {}
};

class DegenerateVariance : public Error {
public:
    DegenerateVariance() : Error("innovation variance is zero") {}
};

class AllFitsFailed : public Error {
public:
    AllFitsFailed() : Error("no candidate model could be fitted") {}
};

class WindowOutOfRange : public Error {
public:
    explicit WindowOutOfRange(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace tradecast
