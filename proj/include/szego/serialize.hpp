// JSON schemas: symbols as {"type":"rational","num":[[re,im],...],"den":[...]}
// or {"type":"fourier","coeffs":[[re,im],...]}; SpectralData as
// {"h":[{"val","mult","angle"}],"k":[...],"dominance":["H","K",...]};
// bracket reports as a labeled matrix. File I/O lives in the scenario runner.

#ifndef SZEGO_SERIALIZE_HPP
#define SZEGO_SERIALIZE_HPP

#include <json.hpp>

#include "szego/hankel.hpp"
#include "szego/poisson.hpp"

namespace szego {

using json = nlohmann::json;

json to_json(const FourierSymbol& u);
json to_json(const RationalSymbol& r);
json spectral_to_json(const SpectralData& sd);
json bracket_report_to_json(const BracketReport& rep);

/// Parses either symbol form; rational symbols are expanded on demand.
struct SymbolInput {
    bool rational = false;
    RationalSymbol r;
    FourierSymbol f;

    FourierSymbol to_fourier(int n0 = kDefaultTruncDim, int nmax = kMaxTruncDim) const;
};

SymbolInput parse_symbol(const json& j);   // throws ConfigError

} // namespace szego

#endif
