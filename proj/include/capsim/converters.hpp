#pragma once

#include "capsim/table_function.hpp"

namespace capsim {

/// The four built-in converter tables. Each maps a normalised ratio
/// (current value over initial value) to a multiplier, sampled at 0.5
/// intervals over [0, 5] and clamped outside.
namespace converters {

/// Onset-rate growth multiplier as a function of the K-L ratio relative to
/// its start value. Roughly exponential until saturating at 5.
inline TableFunction onset_effect() {
  return TableFunction({{0.0, 0.0},
                        {0.5, 0.291},
                        {1.0, 1.0},
                        {1.5, 1.990},
                        {2.0, 3.083},
                        {2.5, 4.029},
                        {3.0, 4.636},
                        {3.5, 4.976},
                        {4.0, 5.0},
                        {4.5, 5.0},
                        {5.0, 5.0}});
}

/// Multifactor-productivity growth multiplier, also driven by the relative
/// K-L ratio. S-shaped: slow start, fast middle, saturation at 5.
inline TableFunction mfp_effect() {
  return TableFunction({{0.0, 0.0},
                        {0.5, 0.415},
                        {1.0, 1.0},
                        {1.5, 1.524},
                        {2.0, 2.214},
                        {2.5, 3.135},
                        {3.0, 4.093},
                        {3.5, 4.667},
                        {4.0, 4.929},
                        {4.5, 5.0},
                        {5.0, 5.0}});
}

/// Price level as a function of the MFP level relative to its start value.
/// Productivity gains push a share of prices down, floored at 0.8.
inline TableFunction price_effect() {
  return TableFunction({{0.0, 1.3890},
                        {0.5, 1.1500},
                        {1.0, 1.0000},
                        {1.5, 0.9223},
                        {2.0, 0.8870},
                        {2.5, 0.8560},
                        {3.0, 0.8332},
                        {3.5, 0.8083},
                        {4.0, 0.8000},
                        {4.5, 0.8000},
                        {5.0, 0.8000}});
}

/// Per-capita income multiplier as a function of the underutilisation rate
/// relative to its start value. Falling underutilisation raises income and
/// vice versa, with diminishing effect at the extremes.
inline TableFunction income_effect() {
  return TableFunction({{0.0, 1.359},
                        {0.5, 1.152},
                        {1.0, 1.0},
                        {1.5, 0.876},
                        {2.0, 0.796},
                        {2.5, 0.748},
                        {3.0, 0.705},
                        {3.5, 0.676},
                        {4.0, 0.648},
                        {4.5, 0.631},
                        {5.0, 0.612}});
}

}  // namespace converters

/// Bundle of the four converters a model run needs.
struct Converters {
  TableFunction onset = converters::onset_effect();
  TableFunction mfp = converters::mfp_effect();
  TableFunction prices = converters::price_effect();
  TableFunction income = converters::income_effect();

  friend bool operator==(const Converters&, const Converters&) = default;
};

}  // namespace capsim
