// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "ehlink/channel.hpp"
#include "ehlink/common.hpp"
#include "ehlink/geometry.hpp"
#include "ehlink/harvester.hpp"
#include "ehlink/modulation.hpp"

namespace ehlink {

// Full experiment description. The seed determines every random draw.
struct SystemConfig {
    EhConfig eh;
    ModulationParams mod = ModulationParams::square_qam(4);
    LinkGeometry geom_sr = LinkGeometry::uniform(1.0, 3.0);
    LinkGeometry geom_rd = LinkGeometry::uniform(1.0, 3.0);
    FadingStats fading;
    double ps_db = 30.0;
    std::uint64_t seed = 1;

    double ps_linear() const { return db_to_linear(ps_db); }

    void validate() const {
        eh.validate();
        mod.validate();
        fading.validate();
    }
};

namespace channel {

inline GammaGammaParams gamma_gamma_sum_params(Link link, const SystemConfig& cfg) {
    return gamma_gamma_sum_params(link, cfg.eh, cfg.ps_linear(), cfg.fading);
}

} // namespace channel
} // namespace ehlink
