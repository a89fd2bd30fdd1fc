// Generated by tests/oracle/gen_reference.py -- do not edit by hand.
#pragma once

namespace oracle {

// P1: mu=0.1 rho=2 dp0dx=1 eta=1 B0=0.5 (l=1, mu0=1)
inline constexpr double kP1Ha    = 1.58113883008418962211402841500759843;
inline constexpr double kP1UAvg  = 2.88364827098168178285760379460457591;
inline constexpr double kP1BInd  = 0.166763253525157211659288565047033233;

// P2: mu=0.07 rho=3.5 dp0dx=2.25 eta=0.8 B0=0.73
inline constexpr double kP2UAvg  = 7.08565341293856318377161782655259575;
inline constexpr double kP2BInd  = 0.629347421664602344804304327667002715;

// P3: as P1 but B0=1e-6 (deep small-Ha regime)
inline constexpr double kP3UAvg  = 3.33333333333111092607394245710165011;
inline constexpr double kP3BInd  = 0.000000416666666666249958015400669491657137;
// Leading-order limits: u -> dp*l^2/(3*mu), B -> dp*mu0*B0*l^3/(24*eta*mu)
inline constexpr double kP3ULimit = 3.33333333333333314829616256247392020;
inline constexpr double kP3BLimit = 0.000000416666666666666624682066914428515524;

// Box-centre values and normalized-coordinate gradients (order: mu,rho,dp0dx,eta,B0)
inline constexpr double kCentreUAvg = 3.87623757988916535178958795666630250;
inline constexpr double kCentreBInd = 0.121824243104134955640866106171995999;
inline constexpr double kCentreGradU[5] = {
    -2.55408445309276227843114617322879057,
    0.0,
    3.47264269437202567700334459531596956,
    0.171536426912179025772439917431450540,
    -0.440881966912237799502596178223593086,
};
inline constexpr double kCentreGradB[5] = {
    -0.0780796749200461751752112606957449026,
    0.0,
    0.109139870581687193841754872813743474,
    -0.100916515868408750655420903875623704,
    0.119119722688141646137440862565026199,
};

// Dimensionless groups and QoIs at P1 with v=1
inline constexpr double kP1Re     = 19.9999999999999988897769753748435212;
inline constexpr double kP1DPstar = 0.500000000000000000000000000000000000;
inline constexpr double kP1Mu0star = 1.00000000000000000000000000000000000;
inline constexpr double kP1UStar  = 2.88364827098168178285760379460457591;
inline constexpr double kP1BStar  = 1.05470342231920073802327513196799399;

}  // namespace oracle
