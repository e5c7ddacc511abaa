// Baseline RAE 2822 coordinate table, 129 points (65 cosine stations per
// surface), counterclockwise from the trailing edge: TE -> upper -> LE ->
// lower -> TE. Sharp trailing edge. Chord units.
#pragma once

#include <array>
#include <utility>

namespace foilgen::geometry {

inline constexpr std::array<std::pair<double, double>, 129> kRae2822Table = {{
    {1.000000, 0.000000}, {0.999398, 0.000155}, {0.997592, 0.000617}, {0.994588, 0.001377},
    {0.990393, 0.002421}, {0.985016, 0.003728}, {0.978470, 0.005277}, {0.970772, 0.007043},
    {0.961940, 0.009000}, {0.951995, 0.011123}, {0.940961, 0.013386}, {0.928864, 0.015768},
    {0.915735, 0.018249}, {0.901604, 0.020810}, {0.886505, 0.023435}, {0.870476, 0.026109},
    {0.853553, 0.028820}, {0.835779, 0.031553}, {0.817197, 0.034294}, {0.797850, 0.037029},
    {0.777785, 0.039740}, {0.757051, 0.042410}, {0.735698, 0.045018}, {0.713778, 0.047544},
    {0.691342, 0.049966}, {0.668445, 0.052261}, {0.645142, 0.054407}, {0.621490, 0.056385},
    {0.597545, 0.058173}, {0.573365, 0.059756}, {0.549009, 0.061118}, {0.524534, 0.062248},
    {0.500000, 0.063135}, {0.475466, 0.063774}, {0.450991, 0.064162}, {0.426635, 0.064295},
    {0.402455, 0.064177}, {0.378510, 0.063810}, {0.354858, 0.063200}, {0.331555, 0.062354},
    {0.308658, 0.061283}, {0.286222, 0.059997}, {0.264302, 0.058511}, {0.242949, 0.056837},
    {0.222215, 0.054991}, {0.202150, 0.052989}, {0.182803, 0.050848}, {0.164221, 0.048583},
    {0.146447, 0.046209}, {0.129524, 0.043740}, {0.113495, 0.041188}, {0.098396, 0.038563},
    {0.084265, 0.035874}, {0.071136, 0.033126}, {0.059039, 0.030325}, {0.048005, 0.027472},
    {0.038060, 0.024571}, {0.029228, 0.021624}, {0.021530, 0.018633}, {0.014984, 0.015600},
    {0.009607, 0.012530}, {0.005412, 0.009428}, {0.002408, 0.006300}, {0.000602, 0.003154},
    {0.000000, 0.000000}, {0.000602, -0.003155}, {0.002408, -0.006307}, {0.005412, -0.009450},
    {0.009607, -0.012579}, {0.014984, -0.015684}, {0.021530, -0.018754}, {0.029228, -0.021778},
    {0.038060, -0.024741}, {0.048005, -0.027629}, {0.059039, -0.030430}, {0.071136, -0.033134},
    {0.084265, -0.035733}, {0.098396, -0.038222}, {0.113495, -0.040600}, {0.129524, -0.042866},
    {0.146447, -0.045021}, {0.164221, -0.047062}, {0.182803, -0.048985}, {0.202150, -0.050780},
    {0.222215, -0.052429}, {0.242949, -0.053910}, {0.264302, -0.055191}, {0.286222, -0.056236},
    {0.308658, -0.057007}, {0.331555, -0.057463}, {0.354858, -0.057568}, {0.378510, -0.057290},
    {0.402455, -0.056610}, {0.426635, -0.055517}, {0.450991, -0.054018}, {0.475466, -0.052133},
    {0.500000, -0.049893}, {0.524534, -0.047345}, {0.549009, -0.044545}, {0.573365, -0.041552},
    {0.597545, -0.038429}, {0.621490, -0.035237}, {0.645142, -0.032033}, {0.668445, -0.028865},
    {0.691342, -0.025772}, {0.713778, -0.022785}, {0.735698, -0.019926}, {0.757051, -0.017210},
    {0.777785, -0.014645}, {0.797850, -0.012239}, {0.817197, -0.009998}, {0.835779, -0.007929},
    {0.853553, -0.006041}, {0.870476, -0.004346}, {0.886505, -0.002857}, {0.901604, -0.001587},
    {0.915735, -0.000544}, {0.928864, 0.000266}, {0.940961, 0.000844}, {0.951995, 0.001202},
    {0.961940, 0.001359}, {0.970772, 0.001347}, {0.978470, 0.001203}, {0.985016, 0.000970},
    {0.990393, 0.000696}, {0.994588, 0.000426}, {0.997592, 0.000201}, {0.999398, 0.000052},
    {1.000000, 0.000000}
}};

}  // namespace foilgen::geometry
