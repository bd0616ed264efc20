#include "rabi/model.hpp"

#include <cmath>

#include "rabi/errors.hpp"

namespace rabi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw InvalidParams(std::string(name) + " must be finite");
}

}  // namespace

std::string to_string(ParitySector sector) {
    switch (sector) {
        case ParitySector::Even: return "even";
        case ParitySector::Odd: return "odd";
        case ParitySector::Full: return "full";
    }
    return "full";
}

ParitySector parse_sector(const std::string& name) {
    if (name == "even") return ParitySector::Even;
    if (name == "odd") return ParitySector::Odd;
    if (name == "full") return ParitySector::Full;
    throw InvalidParams("unknown parity sector '" + name + "'");
}

double sector_nu(ParitySector sector) {
    switch (sector) {
        case ParitySector::Even: return 0.5;
        case ParitySector::Odd: return 1.5;
        case ParitySector::Full: break;
    }
    throw ParityError("the full space carries no Bergman weight");
}

void validate(const NchoParams& p) {
    require_finite(p.alpha, "alpha");
    require_finite(p.beta, "beta");
    require_finite(p.eta, "eta");
    if (!(p.alpha > 0.0) || !(p.beta > 0.0)) throw InvalidParams("NCHO requires alpha > 0 and beta > 0");
    if (p.eta != 0.0 && !(p.alpha * p.beta > 1.0))
        throw InvalidParams("NCHO with eta != 0 requires alpha*beta > 1");
}

void validate(const TwoQrmParams& q) {
    require_finite(q.g, "g");
    require_finite(q.delta, "delta");
    require_finite(q.epsilon, "epsilon");
}

void validate(const DiskParams& d) {
    require_finite(d.nu, "nu");
    require_finite(d.g, "g");
    require_finite(d.delta, "delta");
    require_finite(d.epsilon, "epsilon");
    if (!(d.nu > 0.0)) throw InvalidParams("disk model requires nu > 0");
}

void validate(const OneQrmParams& o) {
    require_finite(o.g_p, "gp");
    require_finite(o.delta_p, "dp");
    require_finite(o.epsilon_p, "ep");
}

void validate(const ModelSpec& spec) {
    std::visit([](const auto& p) { validate(p); }, spec);
}

std::string model_name(const ModelSpec& spec) {
    return std::visit(overloaded{
                          [](const NchoParams&) { return std::string("ncho"); },
                          [](const TwoQrmParams&) { return std::string("2qrm"); },
                          [](const DiskParams&) { return std::string("disk"); },
                          [](const OneQrmParams&) { return std::string("1qrm"); },
                      },
                      spec);
}

bool collapse_regime(const ModelSpec& spec) {
    return std::visit(overloaded{
                          [](const NchoParams& p) { return !(p.alpha * p.beta > 1.0); },
                          [](const TwoQrmParams& q) { return !(std::abs(q.g) < 0.5); },
                          [](const DiskParams& d) { return !(std::abs(d.g) < 0.5); },
                          [](const OneQrmParams&) { return false; },
                      },
                      spec);
}

bool conserves_photon_parity(const ModelSpec& spec) {
    return std::holds_alternative<NchoParams>(spec) || std::holds_alternative<TwoQrmParams>(spec);
}

namespace {

double* parameter_slot(ModelSpec& spec, const std::string& name) {
    double* slot = std::visit(overloaded{
                                  [&](NchoParams& p) -> double* {
                                      if (name == "alpha") return &p.alpha;
                                      if (name == "beta") return &p.beta;
                                      if (name == "eta") return &p.eta;
                                      return nullptr;
                                  },
                                  [&](TwoQrmParams& q) -> double* {
                                      if (name == "g") return &q.g;
                                      if (name == "delta") return &q.delta;
                                      if (name == "epsilon") return &q.epsilon;
                                      return nullptr;
                                  },
                                  [&](DiskParams& d) -> double* {
                                      if (name == "nu") return &d.nu;
                                      if (name == "g") return &d.g;
                                      if (name == "delta") return &d.delta;
                                      if (name == "epsilon") return &d.epsilon;
                                      return nullptr;
                                  },
                                  [&](OneQrmParams& o) -> double* {
                                      if (name == "gp") return &o.g_p;
                                      if (name == "dp") return &o.delta_p;
                                      if (name == "ep") return &o.epsilon_p;
                                      return nullptr;
                                  },
                              },
                              spec);
    if (slot == nullptr)
        throw InvalidParams("model " + model_name(spec) + " has no parameter '" + name + "'");
    return slot;
}

}  // namespace

std::vector<std::pair<std::string, double>> model_parameters(const ModelSpec& spec) {
    using List = std::vector<std::pair<std::string, double>>;
    return std::visit(overloaded{
                          [](const NchoParams& p) { return List{{"alpha", p.alpha}, {"beta", p.beta}, {"eta", p.eta}}; },
                          [](const TwoQrmParams& q) {
                              return List{{"g", q.g}, {"delta", q.delta}, {"epsilon", q.epsilon}};
                          },
                          [](const DiskParams& d) {
                              return List{{"nu", d.nu}, {"g", d.g}, {"delta", d.delta}, {"epsilon", d.epsilon}};
                          },
                          [](const OneQrmParams& o) {
                              return List{{"gp", o.g_p}, {"dp", o.delta_p}, {"ep", o.epsilon_p}};
                          },
                      },
                      spec);
}

double get_parameter(const ModelSpec& spec, const std::string& name) {
    ModelSpec copy = spec;
    return *parameter_slot(copy, name);
}

ModelSpec with_parameter(ModelSpec spec, const std::string& name, double value) {
    *parameter_slot(spec, name) = value;
    return spec;
}

TwoQrmImage ncho_to_2qrm(const NchoParams& p, double lambda) {
    validate(p);
    const double ab = p.alpha * p.beta;
    const double root_ab = std::sqrt(ab);
    TwoQrmImage out;
    out.params.g = 1.0 / (2.0 * root_ab);
    out.params.epsilon = p.eta == 0.0 ? 0.0 : -2.0 * p.eta * std::sqrt(ab - 1.0) / root_ab;
    out.params.delta = -0.5 * lambda * (1.0 / p.alpha - 1.0 / p.beta);
    out.mu = 0.5 * lambda * (1.0 / p.alpha + 1.0 / p.beta);
    return out;
}

NchoImage two_qrm_to_ncho(const TwoQrmParams& q, double mu) {
    validate(q);
    if (!std::isfinite(mu)) throw InvalidParams("mu must be finite");
    if (q.g == 0.0) throw InvalidParams("inverse map requires g != 0");
    if (!(std::abs(mu) > std::abs(q.delta)))
        throw ObstructionError("no NCHO preimage: |mu| <= |Delta|");

    // -g is unitarily equivalent to g (conjugation by i^{a^dag a}), so only |g| enters.
    const double abs_g = std::abs(q.g);
    const double ab = 1.0 / (4.0 * abs_g * abs_g);
    const double ratio = (mu + q.delta) / (mu - q.delta);  // alpha / beta, positive

    NchoImage out;
    out.params.alpha = std::sqrt(ab * ratio);
    out.params.beta = std::sqrt(ab / ratio);
    out.lambda = std::copysign(std::sqrt((mu - q.delta) * (mu + q.delta)), mu) / (2.0 * abs_g);
    if (q.epsilon != 0.0) {
        if (!(ab > 1.0)) throw InvalidParams("eps != 0 needs alpha*beta > 1 for a real eta");
        out.params.eta = -q.epsilon / (4.0 * abs_g * std::sqrt(ab - 1.0));
    }
    return out;
}

OneQrmParams confluence_scaling(const DiskParams& d) {
    return {std::sqrt(d.nu) * d.g, d.delta / 2.0, d.epsilon / 2.0};
}

DiskParams inverse_scaling(const OneQrmParams& o, double nu) {
    return {nu, o.g_p / std::sqrt(nu), 2.0 * o.delta_p, 2.0 * o.epsilon_p};
}

double mu_prime(double mu, double nu) { return (mu - nu) / 2.0; }

double mu_from_prime(double mu_p, double nu) { return 2.0 * mu_p + nu; }

}  // namespace rabi
