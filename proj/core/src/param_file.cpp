#include "omforce/param_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "omforce/constants.hpp"
#include "omforce/errors.hpp"

namespace omforce {

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        size_t consumed = 0;
        const double v = std::stod(value, &consumed);
        if (consumed != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw InvalidParameter("key '" + key + "': cannot parse numeric value '" +
                               value + "'");
    }
}

} // namespace

void ParamFileSpec::set(const std::string& raw_key, const std::string& raw_value) {
    const std::string key = lowercase(trim(raw_key));
    const std::string value = trim(raw_value);

    if (key == "detuning_mode") {
        const std::string mode = lowercase(value);
        if (mode == "bare")
            detuning_mode = DetuningMode::Bare;
        else if (mode == "effective")
            detuning_mode = DetuningMode::Effective;
        else
            throw InvalidParameter("key 'detuning_mode': expected 'bare' or "
                                   "'effective', got '" + value + "'");
        return;
    }

    std::optional<double>* slot = nullptr;
    if (key == "omega_m_hz") slot = &omega_m_hz;
    else if (key == "gamma_m_hz") slot = &gamma_m_hz;
    else if (key == "g_l_hz") slot = &g_l_hz;
    else if (key == "g_q_over_g_l") slot = &g_q_over_g_l;
    else if (key == "g_q_rad_s") slot = &g_q_rad_s;
    else if (key == "kappa_hz") slot = &kappa_hz;
    else if (key == "power_uw") slot = &power_uW;
    else if (key == "wavelength_nm") slot = &wavelength_nm;
    else if (key == "temperature_k") slot = &temperature_K;
    else if (key == "detuning_hz") slot = &detuning_hz;
    else if (key == "mass_kg") slot = &mass_kg;
    else
        throw InvalidParameter("unknown parameter key '" + raw_key + "'");

    *slot = parse_number(key, value);
}

SystemParams ParamFileSpec::build() const {
    auto require = [](const std::optional<double>& v, const char* key) {
        if (!v)
            throw InvalidParameter(std::string("missing required key '") + key + "'");
        return *v;
    };
    constexpr double two_pi = 2.0 * constants::pi;

    SystemParams p;
    p.omega_m = two_pi * require(omega_m_hz, "omega_m_hz");
    p.gamma_m = two_pi * require(gamma_m_hz, "gamma_m_hz");
    p.g_l = two_pi * require(g_l_hz, "g_l_hz");
    p.kappa = two_pi * require(kappa_hz, "kappa_hz");
    p.power = 1e-6 * require(power_uW, "power_uW");
    p.wavelength = 1e-9 * require(wavelength_nm, "wavelength_nm");
    p.temperature = temperature_K.value_or(0.0);
    p.detuning_mode = detuning_mode.value_or(DetuningMode::Effective);
    p.detuning = two_pi * detuning_hz.value_or(0.0);

    if (g_q_over_g_l && g_q_rad_s)
        throw InvalidParameter(
            "keys 'g_q_over_g_l' and 'g_q_rad_s' are mutually exclusive");
    if (g_q_rad_s)
        p.g_q = *g_q_rad_s;
    else
        p.g_q = g_q_over_g_l.value_or(0.0) * p.g_l;

    if (mass_kg)
        p.mass = *mass_kg;

    p.validate();
    return p;
}

ParamFileSpec parse_param_text(const std::string& text) {
    ParamFileSpec spec;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#')
            continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw InvalidParameter("line " + std::to_string(line_no) +
                                   ": expected 'key = value', got '" + stripped + "'");
        spec.set(stripped.substr(0, eq), stripped.substr(eq + 1));
    }
    return spec;
}

ParamFileSpec load_param_file(const std::string& path) {
    std::ifstream file(path);
    if (!file)
        throw InvalidParameter("cannot read parameter file '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_param_text(buffer.str());
}

} // namespace omforce
