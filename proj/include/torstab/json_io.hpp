#pragma once

#include <string>

#include "json.hpp"
#include "torstab/walls_topology.hpp"

namespace torstab {

using Json = nlohmann::json;

// Exact reals are written as "n" or "n/d" strings, floating ones as
// {"approx": x}. Readers accept both, plus plain JSON numbers.
Json to_json(const Real& x);
Real real_from_json(const Json& j);

Json to_json(KClass v);
KClass kclass_from_json(const Json& j);
/// "rk,chd"
KClass parse_kclass(const std::string& text);

Json to_json(const Mat2& m);
Mat2 mat2_from_json(const Json& j);

/// {"a","b","c","e"}
Json to_json(const CentralCharge& z);
CentralCharge charge_from_json(const Json& j);
/// "a,b,c,e", entries rational
CentralCharge parse_charge(const std::string& text);

Json to_json(const LiftedAuto& g);
LiftedAuto lifted_from_json(const Json& j);

Json to_json(const OrbitLabel& label);
OrbitLabel label_from_json(const Json& j);

Json to_json(const StabPoint& sigma);
StabPoint stab_point_from_json(const Json& j);

Json to_json(const FormalSheaf& s);
FormalSheaf sheaf_from_json(const Json& j);
Json to_json(const FormalObject& e);
FormalObject object_from_json(const Json& j);

Json to_json(const SpectrumDescriptor& s);
Json to_json(const StableObjects& s);
Json to_json(const HNFactor& f);
Json to_json(const GammaBounds& b);
Json to_json(const WallDecision& w);
Json to_json(const OrbitComplex& c);
Json to_json(const GroupPresentation& g);
Json to_json(const FiberType& f);

}  // namespace torstab
