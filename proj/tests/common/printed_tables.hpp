#pragma once

// Values as printed in the published tables.

#include <array>
#include <cstddef>

namespace printed {

struct CiRow {
    double rho;
    std::size_t n;
    double sim_lo, sim_hi, fisher_lo, fisher_hi, normal_lo, normal_hi;
};

inline constexpr std::array<CiRow, 18> kTable2{{
    {-0.05, 50, -0.319, 0.249, -0.324, 0.232, -0.336, 0.236},
    {-0.05, 500, -0.134, 0.034, -0.137, 0.038, -0.138, 0.038},
    {-0.05, 5000, -0.077, -0.024, -0.078, -0.022, -0.078, -0.022},
    {-0.01, 50, -0.3, 0.269, -0.288, 0.269, -0.296, 0.276},
    {-0.01, 500, -0.099, 0.081, -0.098, 0.078, -0.098, 0.078},
    {-0.01, 5000, -0.039, 0.016, -0.038, 0.018, -0.038, 0.018},
    {0, 50, -0.28, 0.26, -0.278, 0.278, -0.286, 0.286},
    {0, 500, -0.085, 0.098, -0.088, 0.088, -0.088, 0.088},
    {0, 5000, -0.029, 0.029, -0.028, 0.028, -0.028, 0.028},
    {0.01, 50, -0.262, 0.295, -0.269, 0.288, -0.276, 0.296},
    {0.01, 500, -0.079, 0.1, -0.078, 0.098, -0.078, 0.098},
    {0.01, 5000, -0.019, 0.037, -0.018, 0.038, -0.018, 0.038},
    {0.05, 50, -0.222, 0.326, -0.232, 0.324, -0.236, 0.336},
    {0.05, 500, -0.04, 0.133, -0.038, 0.137, -0.038, 0.138},
    {0.05, 5000, 0.023, 0.077, 0.022, 0.078, 0.022, 0.078},
    {0.1, 50, -0.168, 0.364, -0.183, 0.368, -0.186, 0.386},
    {0.1, 500, 0.014, 0.185, 0.012, 0.186, 0.012, 0.188},
    {0.1, 5000, 0.073, 0.129, 0.072, 0.127, 0.072, 0.128},
}};

inline constexpr std::array<std::size_t, 7> kSizes{50, 100, 250, 500, 1000, 3000, 5000};

inline constexpr std::array<double, 18> kTable3Ics{-0.1, -0.05, -0.04, -0.03, -0.02, -0.01, 0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.1, 0.2, 0.3};

// [size][ic]
inline constexpr std::array<std::array<double, 18>, 7> kTable3{{
    {2.80, 2.75, 2.86, 2.70, 1.97, 6.31, 6.09, 3.62, 1.95, 3.12, 2.67, 2.73, 2.93, 2.56, 2.65, 2.69, 2.65, 2.76},
    {2.84, 2.82, 3.32, 3.74, 3.14, 1.46, 2.95, 2.60, 2.43, 2.99, 2.94, 2.79, 2.80, 3.06, 2.83, 2.85, 2.73, 2.78},
    {2.81, 2.74, 2.84, 2.79, 2.42, 2.63, 2.80, 2.52, 3.09, 2.99, 2.67, 2.76, 2.81, 2.76, 2.77, 2.65, 2.78, 2.81},
    {2.80, 2.75, 2.74, 2.72, 2.96, 2.57, 3.70, 2.62, 2.66, 2.54, 2.79, 2.91, 2.74, 2.85, 2.69, 2.79, 2.80, 2.82},
    {2.75, 2.93, 2.75, 2.80, 2.81, 2.87, 2.65, 2.71, 2.85, 2.75, 2.66, 2.84, 2.72, 2.82, 2.87, 2.80, 2.80, 2.79},
    {2.80, 2.84, 2.79, 2.72, 2.76, 2.99, 2.59, 2.61, 2.69, 2.78, 2.77, 2.77, 2.78, 2.79, 2.84, 2.78, 2.80, 2.80},
    {2.79, 2.80, 2.79, 2.77, 2.95, 3.05, 2.88, 2.82, 2.75, 2.80, 2.79, 2.76, 2.77, 2.83, 2.82, 2.81, 2.80, 2.80},
}};

inline constexpr std::array<double, 19> kTable4Ics{-0.1, -0.05, -0.04, -0.03, -0.02, -0.01, 0.0, 0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.1, 0.2, 0.3};

// [ic][size]
inline constexpr std::array<std::array<double, 7>, 19> kTable4{{
    {0.7390, 0.8230, 0.9150, 0.9810, 0.9990, 1.0000, 1.0000},
    {0.6310, 0.6710, 0.7520, 0.8480, 0.9290, 0.9930, 0.9990},
    {0.5740, 0.6810, 0.7190, 0.7610, 0.8690, 0.9750, 0.9960},
    {0.5770, 0.6390, 0.6680, 0.7150, 0.7990, 0.9250, 0.9680},
    {0.5310, 0.5770, 0.5940, 0.6620, 0.7160, 0.8270, 0.9000},
    {0.5420, 0.5220, 0.5440, 0.5790, 0.6030, 0.6930, 0.7460},
    {0.5120, 0.4880, 0.4880, 0.4970, 0.4850, 0.5100, 0.5360},
    {0.4580, 0.4670, 0.4580, 0.4060, 0.3850, 0.3220, 0.2740},
    {0.4500, 0.4380, 0.3920, 0.3690, 0.2850, 0.1800, 0.1120},
    {0.4630, 0.3960, 0.3060, 0.2840, 0.1950, 0.0700, 0.0320},
    {0.3810, 0.3460, 0.2690, 0.2540, 0.1350, 0.0270, 0.0040},
    {0.3760, 0.3130, 0.2380, 0.1580, 0.0930, 0.0060, 0.0010},
    {0.3610, 0.3070, 0.1940, 0.1110, 0.0420, 0.0060, 0.0000},
    {0.3160, 0.2690, 0.1560, 0.0870, 0.0310, 0.0000, 0.0000},
    {0.3280, 0.2170, 0.1270, 0.0440, 0.0150, 0.0010, 0.0000},
    {0.2940, 0.2000, 0.1040, 0.0310, 0.0090, 0.0000, 0.0000},
    {0.2740, 0.1830, 0.1010, 0.0230, 0.0060, 0.0000, 0.0000},
    {0.1080, 0.0410, 0.0030, 0.0000, 0.0000, 0.0000, 0.0000},
    {0.0330, 0.0030, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000},
}};

struct DecompRow {
    std::size_t n;
    double std_eN, std_et, pct;
    long minimal_T;
};

inline constexpr std::array<DecompRow, 22> kTable5{{
    {1000, 0.032, 0.121, 96.7, 349},
    {2000, 0.022, 0.092, 97.2, 144},
    {3000, 0.018, 0.094, 98.2, 173},
    {1000, 0.032, 0.079, 92.8, 37},
    {2000, 0.022, 0.091, 97.1, 22},
    {3000, 0.018, 0.087, 97.9, 22},
    {1000, 0.032, 0.128, 97.1, 582},
    {2000, 0.022, 0.118, 98.2, 62},
    {3000, 0.018, 0.121, 98.9, 76},
    {1000, 0.032, 0.104, 95.7, 111},
    {2000, 0.022, 0.083, 96.6, 69},
    {3000, 0.018, 0.085, 97.8, 80},
    {1000, 0.032, 0.187, 98.6, 102},
    {2000, 0.022, 0.133, 98.6, 32},
    {3000, 0.018, 0.143, 99.2, 41},
    {1000, 0.032, 0.068, 90.6, 90},
    {2000, 0.022, 0.064, 94.4, 28},
    {3000, 0.018, 0.064, 96.2, 30},
    {1000, 0.032, 0.130, 97.2, 168},
    {2000, 0.022, 0.092, 97.2, 22},
    {3000, 0.018, 0.098, 98.3, 30},
    {7500, 0.012, 0.085, 99.1, 10},
}};

struct CriticalRow {
    double rho0, sigma;
    std::array<double, 3> windows;  // 12, 24, 36 months
};

inline constexpr std::array<CriticalRow, 9> kTable6{{
    {0, 0.06, {-0.028, -0.020, -0.016}},
    {0, 0.08, {-0.038, -0.027, -0.022}},
    {0, 0.1, {-0.047, -0.034, -0.027}},
    {0.01, 0.06, {-0.018, -0.010, -0.006}},
    {0.01, 0.08, {-0.028, -0.017, -0.012}},
    {0.01, 0.1, {-0.037, -0.024, -0.017}},
    {0.05, 0.06, {0.022, 0.030, 0.034}},
    {0.05, 0.08, {0.012, 0.023, 0.028}},
    {0.05, 0.1, {0.003, 0.016, 0.023}},
}};

// P(at least k rejects), k = 1..4, as printed percentages
inline constexpr std::array<double, 4> kTable7Percent{46, 12, 2, 0.2};

struct PowerRow {
    double delta, sigma;
    std::array<double, 4> power;  // avg 5%, avg 2%, binomial 5%, binomial 2%
};

inline constexpr std::array<PowerRow, 9> kTable8{{
    {0.01, 0.06, {0.143, 0.070, 0.105, 0.047}},
    {0.01, 0.08, {0.113, 0.053, 0.088, 0.038}},
    {0.01, 0.1, {0.097, 0.044, 0.079, 0.034}},
    {0.03, 0.06, {0.535, 0.374, 0.327, 0.188}},
    {0.03, 0.08, {0.365, 0.225, 0.225, 0.118}},
    {0.03, 0.1, {0.272, 0.155, 0.175, 0.087}},
    {0.05, 0.06, {0.893, 0.798, 0.654, 0.476}},
    {0.05, 0.08, {0.699, 0.544, 0.446, 0.281}},
    {0.05, 0.1, {0.535, 0.374, 0.327, 0.188}},
}};

} // namespace printed
