#include "evsim/charging.hpp"

#include <set>

#include "evsim/errors.hpp"

namespace evsim {

std::string charger_type_name(ChargerType t) {
    switch (t) {
        case ChargerType::AC_7_2: return "AC_7_2";
        case ChargerType::AC_22: return "AC_22";
        case ChargerType::DC_150: return "DC_150";
    }
    throw InternalError("bad charger type");
}

ChargerType parse_charger_type(const std::string& name) {
    if (name == "AC_7_2") return ChargerType::AC_7_2;
    if (name == "AC_22") return ChargerType::AC_22;
    if (name == "DC_150") return ChargerType::DC_150;
    throw InputError("unknown charger type: " + name);
}

const Station* Deployment::find(int station_id) const {
    for (const Station& s : stations)
        if (s.id == station_id) return &s;
    return nullptr;
}

void Deployment::validate(const NetworkGraph& net) const {
    std::set<int> ids;
    for (const Station& s : stations) {
        if (!ids.insert(s.id).second) throw ConsistencyError("duplicate station id");
        if (s.node < 0 || s.node >= net.num_nodes())
            throw ConsistencyError("station node not in network");
        if (s.counts[0] < 0 || s.counts[1] < 0 || s.counts[2] < 0)
            throw ConsistencyError("negative charger count");
        if (s.total() < 1) throw ConsistencyError("station with no chargers");
    }
}

bool operator==(const Station& a, const Station& b) {
    return a.id == b.id && a.node == b.node && a.counts == b.counts;
}

bool operator==(const Deployment& a, const Deployment& b) {
    return a.stations == b.stations;
}

}  // namespace evsim
