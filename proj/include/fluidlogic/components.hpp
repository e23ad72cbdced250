#pragma once

namespace fluidlogic {

// Solver-wide leak conductance on every closed element, m3/(s.Pa).
inline constexpr double kGmin = 1e-15;

struct FluidProps {
    double mu = 0.894e-3;  // Pa.s at 24 C
    double rho = 997.0;    // kg/m3
};

struct HoseParams {
    double length = 0.0;    // m
    double diameter = 0.0;  // m
};

struct CheckValveParams {
    double p_crack = 1.0e4;  // Pa
    double r_f = 2.0e8;      // Pa.s/m3, forward resistance
};

// Linear membrane model: displacement = compliance * load.
struct MembraneModel {
    double compliance = 3.9e-6;  // m/Pa (1.56 mm at 0.4 kPa)
    double gap = 1.5e-3;         // m, travel needed to close the input channel
};

struct NotValveParams {
    double r_open = 2.0e9;  // Pa.s/m3 (5 kPa drop at 2.5 ml/s)
    double p_lo;            // Pa, closure onset
    double p_hi;            // Pa, full closure

    explicit NotValveParams(const MembraneModel& m = {})
        : p_lo(0.75 * m.gap / m.compliance), p_hi(m.gap / m.compliance) {}
};

// Disc-pole-disc pressure-gain valve. Geometry from the gate drawings; the
// gain inequality ctrl >= alpha*in + beta models the unequal disc areas.
//
// area_factor scales the effective discharge area of the through-path
// orifice. The plain sharp-edge formula on the pole/orifice annulus
// underpredicts this valve's resistance by a factor of ~20 (the measured
// dP/Q at the operating point is ~3.2e10 Pa.s/m3 against ~1.6e9 from the
// formula); the default is calibrated so the open valve passes 2.5 ml/s when
// driven at 69.28 kPa. Set it to 1 for the uncorrected formula.
struct AndValveGeometry {
    double d0 = 1e-3;     // m, pole diameter
    double d1 = 3e-3;     // m, orifice diameter
    double d2 = 5e-3;     // m, carrier ring diameter
    double h1 = 0.9e-3;   // m, plate gap height at full lift
    double cq = 0.7;      // discharge coefficient, in [0.6, 0.9]
    double alpha = 0.25;  // gain ratio
    double beta = 0.0;    // Pa, gain offset
    double area_factor = 0.048216;

    double annulus_area() const;  // pi (d1^2 - d0^2) / 4
};

enum class AndState { open, closed };

// Poiseuille: 128 mu l / (pi D^4)
double hose_resistance(const HoseParams& p, const FluidProps& fluid = {});

// Flat plate gap: 12 mu (d2-d1)/2 / (pi (d1+d2)/2 h1^3)
double plate_gap_resistance(const AndValveGeometry& g, const FluidProps& fluid = {});

// Sharp-edged orifice: Q = Cq A sqrt(2 dP / rho), A the annulus around the pole.
double orifice_flow(double dp, const AndValveGeometry& g, const FluidProps& fluid = {});

// Thin-wall orifice resistance: sqrt(dP rho) / (Cq A). Note dP/orifice_flow(dP)
// equals this divided by sqrt(2); both forms are kept as printed.
double orifice_resistance(double dp, const AndValveGeometry& g, const FluidProps& fluid = {});

double membrane_displacement(double load, const MembraneModel& m);

// 1 below p_lo, 0 above p_hi, linear in between. Effective branch
// conductance is factor / r_open + kGmin.
double not_valve_conductance_factor(double p_ctrl, const NotValveParams& p);

// Open iff p_ctrl >= alpha * p_in + beta.
AndState and_valve_state(double p_ctrl, double p_in, const AndValveGeometry& g);

// 0 for dP <= p_crack, (dP - p_crack) / r_f above. Reverse flow is zero
// (the solver adds only the kGmin leak).
double check_valve_flow(double dp, const CheckValveParams& p);

}  // namespace fluidlogic
