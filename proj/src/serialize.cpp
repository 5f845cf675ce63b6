#include "szego/serialize.hpp"

namespace szego {

namespace {

json complex_list(const std::vector<cxd>& v) {
    json out = json::array();
    for (const auto& c : v) out.push_back({c.real(), c.imag()});
    return out;
}

std::vector<cxd> parse_complex_list(const json& j, const char* what) {
    if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array");
    std::vector<cxd> out;
    for (const auto& e : j) {
        if (e.is_number()) {
            out.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2) {
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            throw ConfigError(std::string(what) + " entries must be re or [re,im]");
        }
    }
    return out;
}

} // namespace

json to_json(const FourierSymbol& u) {
    std::vector<cxd> c(u.coeffs().data(), u.coeffs().data() + u.trunc_dim());
    return {{"type", "fourier"}, {"coeffs", complex_list(c)}};
}

json to_json(const RationalSymbol& r) {
    return {{"type", "rational"}, {"num", complex_list(r.num)}, {"den", complex_list(r.den)}};
}

json spectral_to_json(const SpectralData& sd) {
    json h = json::array(), k = json::array(), dom = json::array();
    std::size_t ih = 0, ik = 0;
    for (const auto& mv : sd.merged) {
        dom.push_back(mv.dom == Dominance::H ? "H" : "K");
        if (mv.dim_h > 0 && ih < sd.h.size()) {
            json e = {{"val", sd.h[ih].value}, {"mult", sd.h[ih].mult}};
            if (mv.dom == Dominance::H && mv.angle) e["angle"] = *mv.angle;
            h.push_back(e);
            ++ih;
        }
        if (mv.dim_k > 0 && ik < sd.k.size()) {
            json e = {{"val", sd.k[ik].value}, {"mult", sd.k[ik].mult}};
            if (mv.dom == Dominance::K && mv.angle) e["angle"] = *mv.angle;
            k.push_back(e);
            ++ik;
        }
    }
    return {{"h", h}, {"k", k}, {"dominance", dom}};
}

json bracket_report_to_json(const BracketReport& rep) {
    json values = json::array(), scales = json::array();
    for (Eigen::Index i = 0; i < rep.values.rows(); ++i) {
        json row = json::array(), srow = json::array();
        for (Eigen::Index j = 0; j < rep.values.cols(); ++j) {
            row.push_back(rep.values(i, j));
            srow.push_back(rep.scales(i, j));
        }
        values.push_back(row);
        scales.push_back(srow);
    }
    return {{"labels", rep.labels},
            {"values", values},
            {"scales", scales},
            {"max_normalized", rep.max_normalized},
            {"informational", rep.informational}};
}

FourierSymbol SymbolInput::to_fourier(int n0, int nmax) const {
    if (!rational) return f;
    return rational_to_fourier_auto(r, n0, nmax);
}

SymbolInput parse_symbol(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw ConfigError("symbol JSON needs a \"type\" field");
    SymbolInput in;
    const std::string type = j.at("type").get<std::string>();
    try {
        if (type == "rational") {
            in.rational = true;
            in.r = RationalSymbol(parse_complex_list(j.at("num"), "num"),
                                  parse_complex_list(j.at("den"), "den"));
        } else if (type == "fourier") {
            const auto c = parse_complex_list(j.at("coeffs"), "coeffs");
            Vec v(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) v[i] = c[i];
            in.f = FourierSymbol(std::move(v));
        } else {
            throw ConfigError("unknown symbol type '" + type + "'");
        }
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid symbol: ") + e.what());
    }
    return in;
}

} // namespace szego
