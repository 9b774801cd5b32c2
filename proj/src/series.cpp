#include "svadf/series.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <charconv>

#include "svadf/error.hpp"

namespace svadf {

namespace chr = std::chrono;

Date Date::from_ymd(int year, unsigned month, unsigned day) {
    const chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
    if (!ymd.ok()) {
        throw Error(ErrorKind::Parse, "invalid calendar date " + std::to_string(year) + "-" +
                                          std::to_string(month) + "-" + std::to_string(day));
    }
    return Date(static_cast<int>(chr::sys_days{ymd}.time_since_epoch().count()));
}

Date Date::parse(std::string_view iso) {
    auto field = [&](std::size_t pos, std::size_t len) {
        int v = 0;
        const char* first = iso.data() + pos;
        const auto [ptr, ec] = std::from_chars(first, first + len, v);
        if (ec != std::errc{} || ptr != first + len) {
            throw Error(ErrorKind::Parse, "not an ISO-8601 date: '" + std::string(iso) + "'");
        }
        return v;
    };
    if (iso.size() < 10 || iso[4] != '-' || iso[7] != '-' ||
        (iso.size() > 10 && iso[10] != 'T' && iso[10] != ' ')) {
        throw Error(ErrorKind::Parse, "not an ISO-8601 date: '" + std::string(iso) + "'");
    }
    return from_ymd(field(0, 4), static_cast<unsigned>(field(5, 2)), static_cast<unsigned>(field(8, 2)));
}

std::string Date::to_string() const {
    const chr::year_month_day ymd{chr::sys_days{chr::days{days_}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

bool Date::is_weekend() const {
    const chr::weekday wd{chr::sys_days{chr::days{days_}}};
    return wd == chr::Saturday || wd == chr::Sunday;
}

PriceSeries::PriceSeries(std::vector<double> values, std::vector<Date> dates, std::string label)
    : values_(std::move(values)), dates_(std::move(dates)), label_(std::move(label)) {
    if (values_.empty()) throw Error(ErrorKind::Data, "price series is empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw Error(ErrorKind::Data, "non-finite value at observation " + std::to_string(i));
        }
    }
    if (!dates_.empty()) {
        if (dates_.size() != values_.size()) {
            throw Error(ErrorKind::Data, "dates and values differ in length");
        }
        for (std::size_t i = 1; i < dates_.size(); ++i) {
            if (!(dates_[i - 1] < dates_[i])) {
                throw Error(ErrorKind::Data, "dates not strictly increasing at " + dates_[i].to_string());
            }
        }
    }
}

PriceSeries PriceSeries::slice(std::size_t first, std::size_t last) const {
    if (first > last || last >= values_.size()) {
        throw Error(ErrorKind::WindowSize, "slice [" + std::to_string(first) + ", " +
                                               std::to_string(last) + "] out of range");
    }
    std::vector<double> v(values_.begin() + first, values_.begin() + last + 1);
    std::vector<Date> d;
    if (dated()) d.assign(dates_.begin() + first, dates_.begin() + last + 1);
    return PriceSeries(std::move(v), std::move(d), label_);
}

PriceSeries PriceSeries::log() const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] > 0.0)) {
            throw Error(ErrorKind::Domain, "log of nonpositive price at observation " + std::to_string(i));
        }
        out[i] = std::log(values_[i]);
    }
    return PriceSeries(std::move(out), dates_, label_);
}

}  // namespace svadf
