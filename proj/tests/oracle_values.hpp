#pragma once

// Generated by tests/oracles/derive.py; do not edit.

namespace oracle {

inline constexpr double kSymLambda1 = 1.0;
inline constexpr double kSymLambda2Lower = -4.0;
inline constexpr double kSymLambda2Upper = -4.0;
inline constexpr double kTieLambda2Lower = -1.125;
inline constexpr double kTieLambda2Upper = -1.40625;
inline constexpr double kTieGap = -0.28125;
inline constexpr double kAsymZ0 = 0.07377536886353606838;
inline constexpr double kAsymLambda1 = 1.0111574870288773978;
inline constexpr double kAsymLambda2Lower = -4.17916167675440086;
inline constexpr double kAsymLambda2Upper = -4.2691779105521994839;
inline constexpr double kAsymGap = -0.090016233797798623858;
inline constexpr double kAsymLambda2LowerAt03 = -3.010381899680155;
inline constexpr double kAsymLambda2UpperAt03 = -3.5142439667410075;
inline constexpr double kEllipseEndpoint01 = 0.0099009900990099009901;
inline constexpr double kEllipseFlat01 = 0.099009900990099009901;
inline constexpr double kEllipseEndpoint005 = 0.0024937655860349127182;
inline constexpr double kEllipseFlat005 = 0.049875311720698254364;
inline constexpr double kAnnulusInnerFlux = 0.47985918835425750494;
inline constexpr double kAnnulusOuterFlux = 0.31104224349372274852;
inline constexpr double kEquilateralFluxOrigin = 0.25;
inline constexpr double kEquilateralFlux03 = 0.1825;
inline constexpr double kEquilateralCentre = 0.037037037037037037037;
inline constexpr double kRectangleShortSide02 = 0.14836493166317331782;
inline constexpr double kRectangleShortSide01 = 0.074245350111314256445;
inline constexpr double kRectangleShortSide005 = 0.03712268727107537541;
inline constexpr double kRectangleCentre02 = 0.019186954030408487208;
inline constexpr double kRectangleValue02 = 0.013556967251340456661;
inline constexpr double kBarrierXY = 0.3125;
inline constexpr double kBarrierResidualNorm = 0.0;

}  // namespace oracle
