// Copyright 2026 The nsbasis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nsbasis/inequality_table.h"

#include <array>
#include <bit>
#include <mutex>
#include <string>

#include "nsbasis/errors.h"
#include "nsbasis/feasibility.h"

namespace nsbasis {

namespace {

// Bit b of a mask selects index b (0-based) of the sorted phase vector.
constexpr std::array<PhaseInequality, 72> kTable = {{
    {1, 1, 0b0001, 0b0001, 0b0100},
    {1, 1, 0b0001, 0b0010, 0b0010},
    {1, 1, 0b0001, 0b0100, 0b0001},
    {1, 0, 0b0001, 0b1000, 0b1000},
    {1, 1, 0b0010, 0b0001, 0b0010},
    {1, 1, 0b0010, 0b0010, 0b0001},
    {1, 0, 0b0010, 0b0100, 0b1000},
    {1, 0, 0b0010, 0b1000, 0b0100},
    {1, 1, 0b0100, 0b0001, 0b0001},
    {1, 0, 0b0100, 0b0010, 0b1000},
    {1, 0, 0b0100, 0b0100, 0b0100},
    {1, 0, 0b0100, 0b1000, 0b0010},
    {1, 0, 0b1000, 0b0001, 0b1000},
    {1, 0, 0b1000, 0b0010, 0b0100},
    {1, 0, 0b1000, 0b0100, 0b0010},
    {1, 0, 0b1000, 0b1000, 0b0001},
    {2, 2, 0b0011, 0b0011, 0b0011},
    {2, 1, 0b0011, 0b0101, 0b1010},
    {2, 1, 0b0011, 0b1001, 0b0110},
    {2, 1, 0b0011, 0b0110, 0b1001},
    {2, 1, 0b0011, 0b1010, 0b0101},
    {2, 0, 0b0011, 0b1100, 0b1100},
    {2, 1, 0b0101, 0b0011, 0b1010},
    {2, 1, 0b0101, 0b0101, 0b1001},
    {2, 1, 0b0101, 0b0101, 0b0110},
    {2, 1, 0b0101, 0b1001, 0b0101},
    {2, 1, 0b0101, 0b0110, 0b0101},
    {2, 0, 0b0101, 0b1010, 0b1100},
    {2, 1, 0b0101, 0b1010, 0b0011},
    {2, 0, 0b0101, 0b1100, 0b1010},
    {2, 1, 0b1001, 0b0011, 0b0110},
    {2, 1, 0b1001, 0b0101, 0b0101},
    {2, 0, 0b1001, 0b1001, 0b1100},
    {2, 1, 0b1001, 0b0110, 0b0011},
    {2, 0, 0b1001, 0b1010, 0b1010},
    {2, 0, 0b1001, 0b1100, 0b1001},
    {2, 1, 0b0110, 0b0011, 0b1001},
    {2, 1, 0b0110, 0b0101, 0b0101},
    {2, 1, 0b0110, 0b1001, 0b0011},
    {2, 0, 0b0110, 0b0110, 0b1100},
    {2, 0, 0b0110, 0b1010, 0b1010},
    {2, 0, 0b0110, 0b1100, 0b0110},
    {2, 1, 0b1010, 0b0011, 0b0101},
    {2, 0, 0b1010, 0b0101, 0b1100},
    {2, 1, 0b1010, 0b0101, 0b0011},
    {2, 0, 0b1010, 0b1001, 0b1010},
    {2, 0, 0b1010, 0b0110, 0b1010},
    {2, 0, 0b1010, 0b1010, 0b0110},
    {2, 0, 0b1010, 0b1010, 0b1001},
    {2, 0, 0b1010, 0b1100, 0b0101},
    {2, 0, 0b1100, 0b0011, 0b1100},
    {2, 0, 0b1100, 0b0101, 0b1010},
    {2, 0, 0b1100, 0b1001, 0b1001},
    {2, 0, 0b1100, 0b0110, 0b0110},
    {2, 0, 0b1100, 0b1010, 0b0101},
    {2, 0, 0b1100, 0b1100, 0b0011},
    {3, 1, 0b0111, 0b0111, 0b1101},
    {3, 1, 0b0111, 0b1011, 0b1011},
    {3, 1, 0b0111, 0b1101, 0b0111},
    {3, 0, 0b0111, 0b1110, 0b1110},
    {3, 1, 0b1011, 0b0111, 0b1011},
    {3, 1, 0b1011, 0b1011, 0b0111},
    {3, 0, 0b1011, 0b1101, 0b1110},
    {3, 0, 0b1011, 0b1110, 0b1101},
    {3, 1, 0b1101, 0b0111, 0b0111},
    {3, 0, 0b1101, 0b1011, 0b1110},
    {3, 0, 0b1101, 0b1101, 0b1101},
    {3, 0, 0b1101, 0b1110, 0b1011},
    {3, 0, 0b1110, 0b0111, 0b1110},
    {3, 0, 0b1110, 0b1011, 0b1101},
    {3, 0, 0b1110, 0b1101, 0b1011},
    {3, 0, 0b1110, 0b1110, 0b0111},
}};

struct FrozenCase {
    std::array<double, 3> target, first, second;
    bool feasible;
};

// Instances decided independently by multi-start numerical synthesis.
constexpr FrozenCase kFrozen[] = {
    {{0.62885305174961414, 0.25633712951100357, 0.23008290438457135}, {0.61010758337877924, 0.33342352084312438, 0.13127507022143448}, {0.58477220536998786, 0.22186571480842482, 0.066324356958957498}, true},
    {{0.67859121131250955, 0.29079981270634808, 0.28813103012544883}, {0.13095266691951635, 0.092784310550198257, 0.026379850538908567}, {0.4403630580995368, 0.29135233148240486, 0.042047918696643538}, false},
    {{0.68734632250721328, 0.21247225196354746, 0.092475570643001603}, {0.73555655746837911, 0.22250572912363453, 0.14533019063068309}, {0.2844068701773762, 0.069449105957224866, 0.068713134127517284}, true},
    {{0.46505531673582645, 0.1280538693982235, 0.054428238918412475}, {0.73002551188991571, 0.15930739770571212, 0.014470564939095765}, {0.44961472881569398, 0.31601017878391469, 0.30741059337939686}, false},
    {{0.65778979774858204, 0.29201933432891314, 0.11084564230872185}, {0.55277500288703363, 0.29049791881232145, 0.077889694882885385}, {0.34269835881957378, 0.23228444466273995, 0.17002533254757068}, true},
    {{0.11067055630665357, 0.067043167736912102, 0.054313385042701112}, {0.5872177569867022, 0.18959927308928243, 0.11659494754902328}, {0.52780927506756392, 0.46809532480628291, 0.24949424211112958}, false},
    {{0.53846021837143954, 0.42757510400086973, 0.33900068220087864}, {0.49429758785286126, 0.21265878755334405, 0.017778672278731422}, {0.43886624356402004, 0.23845560778911118, 0.019149748692188384}, true},
    {{0.52872782853368694, 0.47035817771820854, 0.0035405046428240716}, {0.50620988287824098, 0.29815062188085045, 0.27387468068645154}, {0.66382457441983878, 0.077499273382907408, 0.033674771656745206}, false},
    {{0.3089324220562859, 0.29408010772230236, 0.041498600959667786}, {0.50819520767603465, 0.44243242008783745, 0.16336484404052704}, {0.60649411806767739, 0.30202175470047177, 0.0015014170953682182}, true},
    {{0.36202102994666807, 0.14080446227770643, 0.035512288758713206}, {0.56406511509285961, 0.040152932252346729, 0.031238132943033292}, {0.66271983374264853, 0.054020117863398442, 0.026790215421610808}, true},
    {{0.59557435385799351, 0.082647491879518808, 0.044153890460604528}, {0.65961344476180406, 0.30011874969753211, 0.031928916076793878}, {0.34364343065245406, 0.26354123116280515, 0.14272595011668893}, true},
    {{0.26073571220594827, 0.20255077758220696, 0.095640060761879697}, {0.49766875409106759, 0.40452966961123993, 0.21115178821879321}, {0.39563268425724818, 0.34679881639545618, 0.27129246591731349}, true},
    {{0.3799328680638232, 0.36653379474261794, 0.0057124926923853847}, {0.7177775863830147, 0.28181643710056814, 0.047226449527349279}, {0.59823757198715621, 0.1057073045401421, 0.027621296485264735}, true},
    {{0.71211077942673562, 0.27128280412275518, 0.26972616771415275}, {0.17013056112273817, 0.040004702853805807, 0.0099234978621520198}, {0.51387245392284842, 0.3666707636581068, 0.058769928519934733}, false},
    {{0.86073621954939017, 0.10863745031830363, 0.0073491869429113121}, {0.56991707571932804, 0.27793578870265606, 0.10269363921409136}, {0.64909456040702884, 0.33009382481930488, 0.27919940403672899}, false},
    {{0.80481185913651143, 0.16915029948852178, 0.038820300514849415}, {0.47702676332867855, 0.46265116186298216, 0.026177922057173897}, {0.59486831384453209, 0.24384082489869907, 0.13035799888608424}, false},
    {{0.4205647382875175, 0.36898360446226447, 0.25821744863184992}, {0.4526334280233032, 0.3874862894323135, 0.31749694099233167}, {0.31360103924140337, 0.24726179677456028, 0.24543497843582607}, false},
    {{0.52240878123089007, 0.30074950798088379, 0.16796963719522495}, {0.47594179628495015, 0.38231466279346471, 0.19409202426076888}, {0.47907628237133271, 0.31379787236458268, 0.15825766452791695}, true},
    {{0.43695146921852812, 0.27077767330378599, 0.17934767924124428}, {0.55572127028153306, 0.37263781459926415, 0.2771724483431961}, {0.44808749389207547, 0.41418452057751837, 0.019411108006637423}, false},
    {{0.50969249512955905, 0.18127275548551092, 0.13683840844444045}, {0.51417816575500863, 0.47831713129091208, 0.30232457299921112}, {0.50395852285243803, 0.20050165766686512, 0.066539786882704066}, false},
    {{0.35207375985895539, 0.35022567251644721, 0.16177847363955389}, {0.44220765446072752, 0.37339104150993974, 0.28235398197434119}, {0.21517726087215894, 0.15761200563250116, 0.12801206864486858}, false},
    {{0.40049218897577299, 0.23271703509393987, 0.045247647297110394}, {0.61815922710033822, 0.10147729894012797, 0.080389699681092164}, {0.42634348788608634, 0.25385469089892354, 0.056528427232636236}, true},
    {{0.41657574343927128, 0.39181248883332048, 0.17079090379827333}, {0.47960449629085533, 0.24185807513095853, 0.22963463925504429}, {0.50668023047401278, 0.48581877722049571, 0.19644776000671738}, false},
    {{0.28627098173249721, 0.282031110111091, 0.0076446669523494992}, {0.56451335865869745, 0.1431169470639076, 0.036401772416772504}, {0.7566014140131937, 0.13516972529619015, 0.0094313491909929215}, true},
};

}  // namespace

std::span<const PhaseInequality> phase_inequalities() {
    return kTable;
}

void verify_phase_inequalities() {
    static std::once_flag once;
    static std::string failure;
    std::call_once(once, [] {
        if (kTable.size() != 72) {
            failure = "expected 72 inequalities";
            return;
        }
        int count[4] = {0, 0, 0, 0};
        for (const PhaseInequality &q : kTable) {
            int r = q.rank;
            if (r < 1 || r > 3 || std::popcount(q.first) != r || std::popcount(q.second) != r ||
                std::popcount(q.third) != r || (q.first | q.second | q.third) > 0xF) {
                failure = "malformed inequality row";
                return;
            }
            count[r]++;
        }
        if (count[1] != count[3]) {
            failure = "rank-1 and rank-3 families differ in size";
            return;
        }
        for (const FrozenCase &fc : kFrozen) {
            CanonicalCoordinate t{fc.target[0], fc.target[1], fc.target[2]};
            CanonicalCoordinate a{fc.first[0], fc.first[1], fc.first[2]};
            CanonicalCoordinate b{fc.second[0], fc.second[1], fc.second[2]};
            if (two_layer_feasible_unchecked(t, a, b) != fc.feasible) {
                failure = "frozen instance disagrees with the inequality table";
                return;
            }
        }
    });
    if (!failure.empty()) {
        throw InequalityTableUnavailable(failure);
    }
}

}  // namespace nsbasis
