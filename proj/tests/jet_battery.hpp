#pragma once

#include "blasius/jet.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace blasius::battery {

// Rebuilds each battery expression from jet operations.
inline Jet3 evaluate(const std::string& name, double eta) {
    const Jet3 x = seed(eta);
    const Jet3 x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x;
    const Jet3 p = constant(1.0) + 2.0 * x - 0.5 * x2 + 0.25 * x3 + 0.1 * x4;
    const Jet3 q = constant(-3.0) + x * (1.0 / 3.0) + 1.4 * x2 - 0.125 * x5;
    if (name == "poly_product") return p * q;
    if (name == "tanh_affine") return tanh_jet(0.7 * x - constant(0.3));
    if (name == "tanh_of_poly") return tanh_jet(0.25 * p);
    if (name == "tanh_times_poly") return tanh_jet(0.25 * p) * q + constant(3.0);
    if (name == "nested_tanh") return tanh_jet(1.3 * tanh_jet(x) + 0.2 * x2);
    if (name == "two_layer") {
        return 0.5 * tanh_jet(1.2 * tanh_jet(0.8 * x + constant(0.1)) - constant(0.4)) +
               0.3 * tanh_jet(-0.5 * x + constant(0.2));
    }
    throw std::invalid_argument("unknown battery expression " + name);
}

struct Golden {
    const char* name;
    double eta;
    std::array<double, 4> d;
};

// Generated by tools/oracles/jet_golden.py (sympy, 30 digits).
inline const Golden kGoldens[] = {
    {"poly_product", -1.3, {1.6338979205999999, 11.566574434708333, -59.468953803333335, 141.15858080000001}},
    {"poly_product", 0, {-3, -5.666666666666667, 7.1333333333333337, 11.300000000000001}},
    {"poly_product", 0.4, {-4.5966599168000002, -2.1163830613333334, 10.157757439999999, 4.3378752}},
    {"poly_product", 2.1, {-8.9318948113249998, -51.617023135291667, -238.95792585666666, -802.69105479999996}},
    {"tanh_affine", -1.3, {-0.83667948907681067, 0.20997720279071691, 0.24595706624820085, 0.22637552956418697}},
    {"tanh_affine", 0, {-0.2913126124515909, 0.64059587327864043, 0.26125912031871262, -0.4679569943926854}},
    {"tanh_affine", 0.4, {-0.019997333759930933, 0.69972007464974573, 0.019589550219812655, -0.68490302173145057}},
    {"tanh_affine", 2.1, {0.82427217034139755, 0.22440277244047752, -0.25895654437819482, 0.22833169601165043}},
    {"tanh_of_poly", -1.3, {-0.58966999592414704, 0.60152488145286842, 0.50384042828813347, -0.71060121791253317}},
    {"tanh_of_poly", 0, {0.24491866240370913, 0.47000742440318899, -0.35011730190623597, 0.33246244028018473}},
    {"tanh_of_poly", 0.4, {0.40919171778471664, 0.3633301170652658, -0.17305386888086877, 0.48953706213429493}},
    {"tanh_of_poly", 2.1, {0.94821306716265419, 0.17433881786524028, -0.38359476012369698, 0.086709758653841604}},
    {"tanh_times_poly", -1.3, {3.3556990150705426, 2.6395898324127658, -11.319367161556933, 15.170892218583068}},
    {"tanh_times_poly", 0, {2.2652440127888727, -1.3283827190749973, 2.0494624433845527, 2.6005577422399972}},
    {"tanh_times_poly", 0.4, {1.918118921735491, -0.37248055621841991, 2.5822643112566128, 0.34602629956117725}},
    {"tanh_times_poly", 2.1, {1.8326300024230433, -5.8486583324426675, -20.898000948861355, -35.275941704999184}},
    {"nested_tanh", -1.3, {-0.65399058974391211, -0.10606759181879916, 0.5847167435907572, 0.061674828026576006}},
    {"nested_tanh", 0, {0, 1.3, 0.40000000000000002, -6.9939999999999998}},
    {"nested_tanh", 0.4, {0.48226662229513495, 0.97641041920243021, -1.5399548224734396, -0.6653781501376056}},
    {"nested_tanh", 2.1, {0.97288526474536297, 0.048984157785846479, -0.073737149466981358, 0.093520708031403652}},
    {"two_layer", -1.3, {-0.22122299415186436, -0.01983325812327447, 0.058950759459285351, 0.21320474258898017}},
    {"two_layer", 0, {-0.07742429129079284, 0.29558574613316518, 0.12985636731098024, -1.2082370875888053}},
    {"two_layer", 0.4, {0.038084350797434691, 0.25202814537008306, -0.30485445290410684, -0.61875556948557864}},
    {"two_layer", 2.1, {0.10532099611310859, -0.046923071947225531, 0.0025724960148546497, 0.069071689460314944}},
};

} // namespace blasius::battery
