#ifndef JPSTRAT_REFERENCE_TABLES_HPP
#define JPSTRAT_REFERENCE_TABLES_HPP

// Published reference values for the relative-efficiency studies, at the
// two-decimal precision they were reported with.

namespace refdata {

inline constexpr const char* kDists[10] = {
    "normal", "t3", "uniform", "beta(0.5,0.5)", "exp",
    "chisq(5)", "weibull(0.5)", "weibull(1.5)", "pareto(2.5)", "pareto(4)",
};

// rows follow kDists order; within a row, H_B = 3 then H_B = 5; columns are
// H_J = 3, 4, 5, 6, 7, 8, 10, 12, 14
inline constexpr int kHj[9] = {3, 4, 5, 6, 7, 8, 10, 12, 14};

inline constexpr double kReVsBrssN15[10][2][9] = {
    {{0.82, 0.88, 0.90, 0.90, 0.89, 0.87, 0.83, 0.79, 0.76},
     {0.57, 0.61, 0.62, 0.62, 0.61, 0.60, 0.57, 0.54, 0.52}},
    {{0.83, 0.84, 0.85, 0.85, 0.85, 0.85, 0.84, 0.82, 0.81},
     {0.67, 0.68, 0.69, 0.69, 0.69, 0.69, 0.68, 0.67, 0.66}},
    {{0.82, 0.89, 0.91, 0.91, 0.89, 0.87, 0.82, 0.78, 0.74},
     {0.55, 0.59, 0.61, 0.61, 0.60, 0.58, 0.55, 0.52, 0.49}},
    {{0.82, 0.89, 0.91, 0.91, 0.89, 0.87, 0.82, 0.78, 0.75},
     {0.55, 0.60, 0.61, 0.61, 0.60, 0.59, 0.55, 0.53, 0.50}},
    {{0.82, 0.87, 0.89, 0.90, 0.90, 0.90, 0.88, 0.85, 0.83},
     {0.62, 0.65, 0.66, 0.67, 0.67, 0.67, 0.65, 0.64, 0.62}},
    {{0.82, 0.87, 0.90, 0.90, 0.90, 0.88, 0.85, 0.82, 0.79},
     {0.59, 0.63, 0.64, 0.65, 0.64, 0.63, 0.61, 0.59, 0.57}},
    {{0.83, 0.83, 0.84, 0.85, 0.87, 0.88, 0.90, 0.90, 0.91},
     {0.72, 0.72, 0.73, 0.74, 0.75, 0.76, 0.78, 0.78, 0.79}},
    {{0.82, 0.88, 0.90, 0.91, 0.90, 0.88, 0.85, 0.81, 0.78},
     {0.58, 0.62, 0.64, 0.64, 0.63, 0.62, 0.60, 0.57, 0.55}},
    {{0.83, 0.81, 0.80, 0.81, 0.82, 0.83, 0.84, 0.86, 0.87},
     {0.77, 0.75, 0.74, 0.75, 0.76, 0.77, 0.78, 0.79, 0.80}},
    {{0.83, 0.84, 0.85, 0.86, 0.87, 0.87, 0.88, 0.88, 0.87},
     {0.69, 0.70, 0.71, 0.72, 0.73, 0.73, 0.74, 0.73, 0.73}},
};

inline constexpr double kReVsBrssN60[10][2][9] = {
    {{0.96, 1.16, 1.34, 1.50, 1.65, 1.78, 1.97, 2.05, 2.04},
     {0.67, 0.80, 0.93, 1.04, 1.14, 1.23, 1.36, 1.42, 1.41}},
    {{0.96, 1.06, 1.14, 1.19, 1.24, 1.27, 1.30, 1.31, 1.31},
     {0.79, 0.86, 0.93, 0.97, 1.01, 1.03, 1.06, 1.07, 1.06}},
    {{0.96, 1.18, 1.39, 1.58, 1.76, 1.91, 2.14, 2.24, 2.22},
     {0.64, 0.79, 0.93, 1.05, 1.17, 1.28, 1.43, 1.49, 1.48}},
    {{0.96, 1.18, 1.37, 1.56, 1.73, 1.87, 2.09, 2.19, 2.17},
     {0.65, 0.79, 0.93, 1.05, 1.16, 1.26, 1.41, 1.48, 1.46}},
    {{0.96, 1.11, 1.24, 1.35, 1.45, 1.54, 1.66, 1.73, 1.75},
     {0.72, 0.83, 0.93, 1.01, 1.09, 1.15, 1.24, 1.29, 1.31}},
    {{0.96, 1.14, 1.29, 1.43, 1.55, 1.66, 1.81, 1.89, 1.89},
     {0.69, 0.81, 0.93, 1.03, 1.11, 1.19, 1.30, 1.35, 1.36}},
    {{0.96, 1.02, 1.07, 1.10, 1.13, 1.15, 1.18, 1.20, 1.22},
     {0.83, 0.89, 0.93, 0.96, 0.98, 1.00, 1.03, 1.04, 1.06}},
    {{0.96, 1.15, 1.31, 1.46, 1.59, 1.71, 1.88, 1.96, 1.96},
     {0.68, 0.81, 0.93, 1.03, 1.13, 1.21, 1.33, 1.38, 1.39}},
    {{0.96, 0.99, 1.00, 1.01, 1.01, 1.00, 0.99, 0.97, 0.96},
     {0.89, 0.91, 0.92, 0.93, 0.93, 0.93, 0.91, 0.90, 0.89}},
    {{0.96, 1.04, 1.10, 1.15, 1.19, 1.22, 1.26, 1.28, 1.28},
     {0.81, 0.87, 0.93, 0.97, 1.00, 1.02, 1.05, 1.07, 1.08}},
};

// optimal class size and maximum RE per sample size n = 5, 10, ..., 50,
// rows in kDists order
inline constexpr int kOptimalH[10][10] = {
    {4, 5, 5, 6, 7, 8, 9, 9, 10, 11},
    {5, 5, 5, 5, 6, 7, 8, 9, 10, 10},
    {4, 4, 5, 6, 7, 8, 9, 9, 10, 11},
    {4, 5, 5, 6, 7, 8, 9, 9, 10, 11},
    {5, 5, 7, 7, 8, 8, 9, 10, 11, 12},
    {4, 5, 6, 6, 7, 8, 9, 10, 11, 11},
    {14, 14, 16, 13, 14, 16, 15, 18, 17, 16},
    {4, 5, 6, 6, 7, 8, 9, 10, 11, 11},
    {1, 20, 23, 24, 2, 3, 4, 4, 4, 5},
    {7, 9, 9, 9, 10, 9, 11, 11, 12, 11},
};

inline constexpr double kMre[10][10] = {
    {1.16, 1.45, 1.73, 2.01, 2.27, 2.52, 2.77, 3.01, 3.25, 3.48},
    {1.06, 1.18, 1.29, 1.40, 1.49, 1.58, 1.66, 1.74, 1.81, 1.87},
    {1.18, 1.50, 1.83, 2.15, 2.46, 2.76, 3.06, 3.35, 3.64, 3.93},
    {1.17, 1.49, 1.80, 2.10, 2.40, 2.69, 2.97, 3.24, 3.52, 3.79},
    {1.10, 1.29, 1.48, 1.65, 1.82, 1.99, 2.14, 2.29, 2.44, 2.58},
    {1.13, 1.37, 1.61, 1.83, 2.04, 2.25, 2.46, 2.65, 2.84, 3.02},
    {1.03, 1.08, 1.13, 1.17, 1.22, 1.27, 1.31, 1.36, 1.40, 1.44},
    {1.14, 1.40, 1.65, 1.89, 2.12, 2.35, 2.57, 2.78, 2.99, 3.19},
    {1.00, 1.01, 1.02, 1.03, 1.04, 1.06, 1.08, 1.10, 1.11, 1.13},
    {1.04, 1.12, 1.19, 1.26, 1.33, 1.39, 1.46, 1.52, 1.58, 1.63},
};

// rows with reporting-only h_opt comparison (heavy-tail sensitivity near
// two-decimal rounding ties): weibull(0.5) and the two pareto members
inline constexpr bool kHOptReportOnly[10] = {false, false, false, false, false,
                                             false, true,  false, true,  true};

// members held to the tighter +-0.01 band in the BRSS tables
inline constexpr bool kTightBand[10] = {true,  false, true,  false, true,
                                        false, false, false, false, false};

}  // namespace refdata

#endif  // JPSTRAT_REFERENCE_TABLES_HPP
