#include "benchmark_starts.hpp"

namespace esmf::bench::detail {

// Generated by tools/find_starts with its default settings.
const std::vector<StartRecord>& stored_starts() {
    static const std::vector<StartRecord> starts = {
        {"G1", true, {5.5511151231257827e-17, 1, 0, 0, 1, 0, 0.95910248377337415, 1, 0, 0, 2.2204460492503131e-16, 0, 1},
         "violation minimised from the midpoint, seed 20240601, budget 200000"},
        {"G1", false, {0.99683937284144075, 0.43377740643915819, 0.64970470871431196, 0.17139235405377329, 0.26030109952108132, 0.45498651079447489, 0.71989142176533782, 0.73542756794682396, 0.50606415622774847, 0.33102546512762909, 3.7939055938678043, 1.6433254375324373, 0.79864016030729246},
         "rejection sampling over the box for 1e-5 <= g <= 10, seed 20240601, draw 5208"},
        {"G2", true, {1.1554143888446282, 1.8246344027192205, 1.6760709647198457, 8.4231614135261452, 0.89167052675025549, 7.5377967906501988, 4.2772925477737047, 5.1445868618441271, 8.5278238252188032, 9.8102500595929154, 6.4772023105966445, 7.3566027628647195, 6.0024026386017857, 7.7656977956985243, 5.2761925485646035, 4.3098825201897606, 7.3696168902965411, 1.5893735730680916, 3.4518875808590677, 3.441653303071579},
         "rejection sampling over the box, seed 20240601, draw 1"},
        {"G2", false, {0.82151290430094559, 0.75975515928430037, 0.45205970166023907, 2.6828420875146808e-05, 2.5685432847558385, 4.5643454479677086, 0.76095364325188597, 4.1258168668224329, 4.7103384763464611, 7.4312784416456079, 0.042112695620544129, 8.2041908741736265, 3.6228957801207651, 4.3230753236229837, 8.4930522780613558, 4.430388082814904, 1.5450374476382382, 3.0034964956150265, 1.5431219893480586, 0.017264514090735827},
         "rejection sampling over the box for 1e-5 <= g <= 10, seed 20240601, draw 7488"},
        {"G3", true, {0.18582130196747981, 0.075342006597687944, 0.20264586291252454, 0.39563449562112413, 0.27260638233243317, 0.055803242032615316, 0.26002535168442675, 0.26755660003392895, 0.21430063205664035, 0.31510692286955511, 0.27358253412830841, 0.058967197479797631, 0.11066534514589219, 0.31092747541767507, 0, 0.046500960687800762, 0.34304317956046076, 0.17763436196277579, 0.20633788807641315, 0.13803399456775006},
         "violation minimised from the midpoint, seed 20240601, budget 200000"},
        {"G3", false, {0.11554143888446282, 0.18246344027192204, 0.16760709647198457, 0.84231614135261446, 0.089167052675025546, 0.75377967906501986, 0.42772925477737045, 0.51445868618441271, 0.85278238252188032, 0.98102500595929154, 0.64772023105966448, 0.7356602762864719, 0.60024026386017859, 0.7765697795698524, 0.52761925485646033, 0.43098825201897606, 0.73696168902965409, 0.15893735730680916, 0.34518875808590677, 0.3441653303071579},
         "rejection sampling over the box for 1e-5 <= g <= 10, seed 20240601, draw 1"},
        {"G4", true, {85.458372543882135, 36.878323526268282, 38.570037124554752, 27.07928579046272, 32.180716494341837},
         "rejection sampling over the box, seed 20240601, draw 10"},
        {"G4", false, {80.772994533227106, 35.189561283263068, 30.016927736495724, 42.16169054434706, 28.605006948150461},
         "rejection sampling over the box for 1e-5 <= g <= 10, seed 20240601, draw 1"},
        {"G5", true, {902.40094501607007, 798.41100086473091, -0.035654936010171091, -0.4721306063257788},
         "violation minimised from the midpoint, seed 20240601, budget 200000"},
        {"G5", false, {600, 600, 0, 0},
         "box midpoint"},
        {"G6", true, {14.754768974690776, 7.2830362204923267},
         "rejection sampling over the box, seed 20240601, draw 10109"},
        {"G6", false, {15.424763585133842, 4.9781170267139823},
         "rejection sampling over the box for 1e-5 <= g <= 10, seed 20240601, draw 642"},
        {"G7", true, {2.6331313342872207, 0.45822832443106554, 3.9780546835281441, 3.652028865451399, 0.26157696492233307, 10, 5.2173675906225814, 5.8583832353546121, 6.8407537172868995, 6.0810910993815233},
         "violation minimised from the midpoint, seed 20240601, budget 200000"},
        {"G7", false, {2.211144356021153, 2.3150302065924517, 7.7789033182242626, 6.8274327808526571, 2.5722317870862845, 5.4822938827977357, 7.8880591355092413, -3.4684953594005643, 7.1179498818220175, 6.2065081874397485},
         "rejection sampling over the box for 1e-5 <= g <= 10, seed 20240601, draw 135975"},
        {"G8", true, {1.3287545272666712, 4.4674684229545933},
         "rejection sampling over the box, seed 20240601, draw 259"},
        {"G8", false, {1.1554143888446282, 1.8246344027192205},
         "rejection sampling over the box for 1e-5 <= g <= 10, seed 20240601, draw 1"},
        {"G9", true, {1.6012471058655819, -0.72200921354119529, -1.3582637916413329, 3.2059084316222819, -5.1929616134247745, -3.4198486378452806, 0.93276036428114217},
         "rejection sampling over the box, seed 20240601, draw 316"},
        {"G9", false, {-0.41810205191259797, -0.75238302572364901, -3.0200116788781788, -1.2073394158460431, -2.5492639072424037, 0.1230316122805668, 1.2607718425193291},
         "rejection sampling over the box for 1e-5 <= g <= 10, seed 20240601, draw 143"},
        {"G10", true, {6422.0966457765444, 3908.292408864872, 8672.6212513749961, 208.64811734228741, 297.30261553634426, 125.82523121748903, 277.94668219237843, 395.66215051730592},
         "rejection sampling over the box, seed 20240601, draw 75237"},
        {"G10", false, {7395.9207213935751, 2430.4362157612823, 4106.6988227731608, 350.72367700408631, 611.00900902233093, 424.80060598789134, 532.04455592938677, 843.80058301922361},
         "rejection sampling over the box for 1e-5 <= g <= 10, seed 20240601, draw 3"},
        {"G11", true, {0.043215512482434271, 0.0017975081578478491},
         "rejection sampling over the box, seed 20240601, draw 9650"},
        {"G11", false, {-0.76891712223107433, -0.63507311945615585},
         "rejection sampling over the box for 1e-5 <= g <= 10, seed 20240601, draw 1"},
        {"G12", true, {8.8750067271478521, 3.8720726122152538, 9.1744403209028},
         "rejection sampling over the box, seed 20240601, draw 30"},
        {"G12", false, {1.1554143888446282, 1.8246344027192205, 1.6760709647198457},
         "rejection sampling over the box for 1e-5 <= g <= 10, seed 20240601, draw 1"},
        {"G13", true, {-1.0016344898356657, 0.16912957124027056, -2.8790582253058483, 0.11944451901272504, -0.81542358508328849},
         "violation minimised from the midpoint, seed 20240601, budget 200000"},
        {"G13", false, {0.67951306287445634, 1.0840372709177708, 0.64153768870514316, 1.7700465892470554, 0.17676323108134628},
         "rejection sampling over the box for 1e-5 <= g <= 10, seed 20240601, draw 3"},
        {"PVD", true, {5.285792092946517, 6.0712781615006604, 133.06684390133626, 149.77545249442966},
         "rejection sampling over the box, seed 20240601, draw 3"},
        {"PVD", false, {0.60864819763453148, 4.6794005342732463, 91.268558407700382, 107.74715037503842},
         "rejection sampling over the box for 1e-5 <= g <= 10, seed 20240601, draw 2"},
        {"TCS", true, {0.081125938327425623, 0.65012069596225519, 11.792778897425764},
         "rejection sampling over the box, seed 20240601, draw 61"},
        {"TCS", false, {0.27530580582470249, 0.44158661228551815, 4.1788922541357998},
         "rejection sampling over the box for 1e-5 <= g <= 10, seed 20240601, draw 1"},
        {"WBD", true, {0.63576225530554009, 3.1305522110820441, 6.7180355591427476, 0.63573780156771709},
         "rejection sampling over the box, seed 20240601, draw 117182"},
        {"WBD", false, {0.29218822376567288, 7.5624188227436964, 4.334519622295967, 1.0774715037503841},
         "rejection sampling over the box for 1e-5 <= g <= 10, seed 20240601, draw 2"},
    };
    return starts;
}

}  // namespace esmf::bench::detail
