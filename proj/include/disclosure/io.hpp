#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "disclosure/equilibrium.hpp"
#include "disclosure/extensions.hpp"
#include "disclosure/oracle.hpp"

namespace disclosure::io {

using nlohmann::json;

// fixed "%.12g" formatting so identical runs give identical bytes
std::string num(double x);

json to_json(const ModelParams& params);
json to_json(const JointBeliefs& b);
json to_json(const ThresholdFunction& tf);
json to_json(const EquilibriumResult& r);
json to_json(const OracleEquilibrium& eq, const DiscreteGame& game);
json to_json(const PricePathReport& rep);
json to_json(const McEstimate& est);

// header s,price,branch; the jump at vhat appears as two rows sharing s (le then gt)
void write_price_curve_csv(std::ostream& out, const PriceCurve& curve);
// noisy curves carry their precision and veracity prior
void write_noisy_curve_csv(std::ostream& out, const PriceCurve& curve, double tau, double q);
// header s,v_late,regime
void write_threshold_csv(std::ostream& out, const ThresholdFunction& tf);

}  // namespace disclosure::io
