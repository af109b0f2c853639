#pragma once

#include <array>
#include <string>
#include <vector>

#include "evsim/network.hpp"

namespace evsim {

// The three rated power levels of the cost model.
enum class ChargerType : int { AC_7_2 = 0, AC_22 = 1, DC_150 = 2 };

inline constexpr int kNumChargerTypes = 3;
inline constexpr std::array<ChargerType, 3> kChargerTypes{
    ChargerType::AC_7_2, ChargerType::AC_22, ChargerType::DC_150};

enum class ChargerClass { AC, DC };

constexpr double power_kw(ChargerType t) noexcept {
    constexpr std::array<double, 3> p{7.2, 22.0, 150.0};
    return p[static_cast<std::size_t>(t)];
}

constexpr ChargerClass charger_class(ChargerType t) noexcept {
    return t == ChargerType::DC_150 ? ChargerClass::DC : ChargerClass::AC;
}

std::string charger_type_name(ChargerType t);
ChargerType parse_charger_type(const std::string& name);

// A station is a network node with per-type charger counts. A station is a
// DC site exactly when it holds at least one DC charger.
struct Station {
    int id = 0;
    int node = 0;
    std::array<int, kNumChargerTypes> counts{0, 0, 0};

    int count(ChargerType t) const { return counts[static_cast<std::size_t>(t)]; }
    int& count(ChargerType t) { return counts[static_cast<std::size_t>(t)]; }
    int total() const { return counts[0] + counts[1] + counts[2]; }
    bool has_dc() const { return count(ChargerType::DC_150) >= 1; }
};

struct Deployment {
    std::vector<Station> stations;

    bool empty() const { return stations.empty(); }
    const Station* find(int station_id) const;

    // station ids unique, counts sane, nodes exist in the network
    void validate(const NetworkGraph& net) const;
};

bool operator==(const Station& a, const Station& b);
bool operator==(const Deployment& a, const Deployment& b);

}  // namespace evsim
