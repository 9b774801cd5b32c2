#include "svadf/dgp.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "svadf/error.hpp"

namespace svadf::dgp {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidSpec, msg); }

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

double parse_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        invalid("key '" + key + "': not a number: '" + text + "'");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        invalid("key '" + key + "': not an unsigned integer: '" + text + "'");
    }
    return v;
}

}  // namespace

std::string_view to_string(VolKind kind) noexcept {
    switch (kind) {
        case VolKind::Constant: return "constant";
        case VolKind::LogAr1: return "logar1";
        case VolKind::Garch: return "garch";
    }
    return "constant";
}

VolKind parse_vol_kind(std::string_view text) {
    if (text == "constant") return VolKind::Constant;
    if (text == "logar1" || text == "sv") return VolKind::LogAr1;
    if (text == "garch") return VolKind::Garch;
    invalid("unknown volatility kind '" + std::string(text) + "'");
}

VolSpec VolSpec::constant(double sigma0) {
    VolSpec v;
    v.sigma0 = sigma0;
    return v;
}

VolSpec VolSpec::log_ar1(double eta, std::optional<double> phi, double sigma0) {
    VolSpec v;
    v.kind = VolKind::LogAr1;
    v.eta = eta;
    v.phi = phi;
    v.sigma0 = sigma0;
    return v;
}

VolSpec VolSpec::garch(double alpha_g, double beta_g, double sigma0) {
    VolSpec v;
    v.kind = VolKind::Garch;
    v.alpha_g = alpha_g;
    v.beta_g = beta_g;
    v.sigma0 = sigma0;
    return v;
}

void VolSpec::validate() const {
    if (!std::isfinite(sigma0) || sigma0 < 0.0) invalid("sigma0 must be finite and nonnegative");
    switch (kind) {
        case VolKind::Constant:
            break;
        case VolKind::LogAr1:
            if (!(sigma0 > 0.0)) invalid("sigma0 must be positive for log-AR(1) volatility");
            if (!(eta >= 0.0) || !std::isfinite(eta)) invalid("eta must be nonnegative");
            if (phi && !(*phi > 0.0 && *phi <= 1.0)) invalid("phi must lie in (0, 1]");
            break;
        case VolKind::Garch:
            if (!(sigma0 > 0.0)) invalid("sigma0 must be positive for GARCH volatility");
            if (!(alpha_g >= 0.0) || !(beta_g >= 0.0)) invalid("GARCH coefficients must be nonnegative");
            if (!(alpha_g + beta_g < 1.0)) invalid("GARCH requires alpha_g + beta_g < 1");
            break;
    }
}

double iterated_log_persistence(std::size_t n) {
    const double m = static_cast<double>(std::max<std::size_t>(n, 16));
    return 1.0 - 1.0 / std::log(std::log(m));
}

double VolSpec::persistence(std::size_t n) const { return phi ? *phi : iterated_log_persistence(n); }

void BubbleSpec::validate() const {
    if (!(r_e > 0.0 && r_e < r_f && r_f <= 1.0)) invalid("bubble requires 0 < r_e < r_f <= 1");
    if (!(c > 0.0) || !std::isfinite(c)) invalid("bubble requires c > 0");
    // alpha = 1 (local-to-unity) is admitted so the alpha = 1.0 accuracy designs can be run.
    if (!(alpha > 0.0 && alpha <= 1.0)) invalid("bubble requires alpha in (0, 1]");
}

double BubbleSpec::root(std::size_t n) const {
    return 1.0 + c / std::pow(static_cast<double>(n), alpha);
}

std::size_t BubbleSpec::origin_index(std::size_t n) const {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * r_e));
}

std::size_t BubbleSpec::collapse_index(std::size_t n) const {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * r_f));
}

void DgpSpec::validate() const {
    if (n < kMinSampleSize) invalid("sample size must be at least " + std::to_string(kMinSampleSize));
    if (!std::isfinite(x0)) invalid("x0 must be finite");
    vol.validate();
    if (bubble) {
        bubble->validate();
        if (bubble->origin_index(n) < 1) invalid("bubble origin falls before the first observation");
    }
}

Shocks draw_shocks(const VolSpec& spec, std::size_t n, Rng& rng) {
    spec.validate();
    if (n == 0) invalid("volatility path needs n >= 1");
    Shocks s;
    s.sigma.resize(n);
    s.eps.resize(n);
    switch (spec.kind) {
        case VolKind::Constant:
            for (std::size_t t = 0; t < n; ++t) {
                s.sigma[t] = spec.sigma0;
                s.eps[t] = rng.normal();
            }
            break;
        case VolKind::LogAr1: {
            const double phi = spec.persistence(n);
            double log_var = 2.0 * std::log(spec.sigma0);
            for (std::size_t t = 0; t < n; ++t) {
                log_var = phi * log_var + spec.eta * rng.normal();
                s.sigma[t] = std::exp(0.5 * log_var);
                s.eps[t] = rng.normal();
            }
            break;
        }
        case VolKind::Garch: {
            double var = spec.sigma0 * spec.sigma0;
            double u = spec.sigma0 * rng.normal();
            for (std::size_t t = 0; t < n; ++t) {
                var = spec.alpha_g * u * u + spec.beta_g * var;
                s.sigma[t] = std::sqrt(var);
                s.eps[t] = rng.normal();
                u = s.sigma[t] * s.eps[t];
            }
            break;
        }
    }
    return s;
}

std::vector<double> gen_volatility(const VolSpec& spec, std::size_t n, Rng& rng) {
    return draw_shocks(spec, n, rng).sigma;
}

namespace {

std::vector<double> simulate_levels(const DgpSpec& spec, const Shocks& shocks) {
    std::vector<double> x(spec.n + 1);
    x[0] = spec.x0;
    std::size_t te = spec.n + 1;
    std::size_t tf = 0;
    double root = 1.0;
    if (spec.bubble) {
        te = spec.bubble->origin_index(spec.n);
        tf = spec.bubble->collapse_index(spec.n);
        root = spec.bubble->root(spec.n);
    }
    for (std::size_t t = 1; t <= spec.n; ++t) {
        const double ar = (t >= te && t <= tf) ? root : 1.0;
        x[t] = ar * x[t - 1] + shocks.sigma[t - 1] * shocks.eps[t - 1];
    }
    return x;
}

}  // namespace

PriceSeries simulate(const DgpSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const Shocks shocks = draw_shocks(spec.vol, spec.n, rng);
    return PriceSeries(simulate_levels(spec, shocks), {}, "simulated");
}

PriceSeries simulate_pwy_reinit(const DgpSpec& spec, double x_reset_sd) {
    spec.validate();
    if (!spec.bubble) invalid("re-initialization model requires a bubble");
    if (!(x_reset_sd >= 0.0) || !std::isfinite(x_reset_sd)) invalid("x_reset_sd must be nonnegative");
    Rng rng(spec.seed);
    const Shocks shocks = draw_shocks(spec.vol, spec.n, rng);
    std::vector<double> x = simulate_levels(spec, shocks);

    Rng reset_rng(derive_seed(spec.seed, 1));
    const double reset = x_reset_sd * reset_rng.normal();
    const std::size_t te = spec.bubble->origin_index(spec.n);
    const std::size_t tf = spec.bubble->collapse_index(spec.n);
    double level = x[te] + reset;
    for (std::size_t t = tf + 1; t <= spec.n; ++t) {
        level += shocks.sigma[t - 1] * shocks.eps[t - 1];
        x[t] = level;
    }
    return PriceSeries(std::move(x), {}, "simulated-reinit");
}

std::map<std::string, std::string> to_key_values(const DgpSpec& spec) {
    std::map<std::string, std::string> kv;
    kv["n"] = std::to_string(spec.n);
    kv["x0"] = format_double(spec.x0);
    kv["seed"] = std::to_string(spec.seed);
    kv["vol"] = std::string(to_string(spec.vol.kind));
    kv["sigma0"] = format_double(spec.vol.sigma0);
    switch (spec.vol.kind) {
        case VolKind::Constant:
            break;
        case VolKind::LogAr1:
            kv["eta"] = format_double(spec.vol.eta);
            kv["phi"] = spec.vol.phi ? format_double(*spec.vol.phi) : "iterated-log";
            break;
        case VolKind::Garch:
            kv["alpha-g"] = format_double(spec.vol.alpha_g);
            kv["beta-g"] = format_double(spec.vol.beta_g);
            break;
    }
    if (spec.bubble) {
        kv["re"] = format_double(spec.bubble->r_e);
        kv["rf"] = format_double(spec.bubble->r_f);
        kv["c"] = format_double(spec.bubble->c);
        kv["alpha"] = format_double(spec.bubble->alpha);
    }
    return kv;
}

DgpSpec from_key_values(const std::map<std::string, std::string>& kv) {
    static const char* known[] = {"n",   "x0",      "seed",   "vol", "sigma0", "eta", "phi",
                                  "alpha-g", "beta-g", "re",  "rf",     "c",   "alpha"};
    for (const auto& [key, value] : kv) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) invalid("unknown key '" + key + "'");
    }
    auto get = [&](const char* key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };

    DgpSpec spec;
    if (const auto* v = get("n")) spec.n = parse_u64("n", *v);
    if (const auto* v = get("x0")) spec.x0 = parse_double("x0", *v);
    if (const auto* v = get("seed")) spec.seed = parse_u64("seed", *v);
    if (const auto* v = get("vol")) spec.vol.kind = parse_vol_kind(*v);
    if (const auto* v = get("sigma0")) spec.vol.sigma0 = parse_double("sigma0", *v);
    if (const auto* v = get("eta")) spec.vol.eta = parse_double("eta", *v);
    if (const auto* v = get("phi"); v && *v != "iterated-log") spec.vol.phi = parse_double("phi", *v);
    if (const auto* v = get("alpha-g")) spec.vol.alpha_g = parse_double("alpha-g", *v);
    if (const auto* v = get("beta-g")) spec.vol.beta_g = parse_double("beta-g", *v);

    const bool has_bubble = get("re") || get("rf");
    if (has_bubble) {
        if (!get("re") || !get("rf")) invalid("bubble needs both 're' and 'rf'");
        BubbleSpec b;
        b.r_e = parse_double("re", *get("re"));
        b.r_f = parse_double("rf", *get("rf"));
        if (const auto* v = get("c")) b.c = parse_double("c", *v);
        if (const auto* v = get("alpha")) b.alpha = parse_double("alpha", *v);
        spec.bubble = b;
    }
    spec.validate();
    return spec;
}

std::string to_config_section(const DgpSpec& spec, std::string_view section) {
    std::ostringstream out;
    out << '[' << section << "]\n";
    for (const auto& [key, value] : to_key_values(spec)) out << key << " = " << value << '\n';
    return out.str();
}

}  // namespace svadf::dgp
