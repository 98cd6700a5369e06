// Chebyshev coefficients (variable x = 2p - 1 on [-1, 1]) of the
// Riemann-Siegel correction terms C0..C3 in the remainder expansion
//   Z(t) ~ 2 sum n^{-1/2} cos(theta - t ln n)
//        + (-1)^{nu-1} (t/2pi)^{-1/4} sum_j C_j(p) (t/2pi)^{-j/2}.
// Generated by scripts/gen_rs_tables.py; do not edit by hand.

pub const C0: [f64; 31] = [
    0.64266728623976838,
    1.4166568729795965e-81,
    0.27197299999785507,
    -9.4420913498242130e-82,
    0.010738605819340284,
    8.5910284950321656e-82,
    -0.0013743815296336614,
    1.0812812399362557e-81,
    -0.00012468221880320677,
    4.2004069930059116e-82,
    -5.7645997067830480e-7,
    1.2009987221598835e-81,
    2.7280674295804522e-7,
    1.5177941235231445e-81,
    8.0779530595004706e-9,
    2.1853097819821605e-81,
    -2.0884608068869654e-10,
    -6.3908153082195452e-82,
    -1.3115561854739527e-11,
    -1.5586804380909192e-81,
    -1.4207987228087185e-14,
    -6.6516248927525920e-82,
    1.0271701357931162e-14,
    3.7052609772570821e-81,
    1.3974598819518374e-16,
    2.9007712625602216e-81,
    -4.4841187339522883e-18,
    2.8081152259497971e-82,
    -1.1830599573845289e-19,
    8.6675064935042620e-83,
    9.3898695603999356e-22,
];

pub const C1: [f64; 34] = [
    8.3991055618614796e-73,
    0.010697913921003001,
    1.6793647356562540e-72,
    0.017170651243377884,
    1.6779948923668226e-72,
    0.0027932111497884711,
    1.6757094392533499e-72,
    -3.6375653719275042e-5,
    1.6725048170555498e-72,
    -2.7108955231150887e-5,
    1.6683760747455335e-72,
    -1.0483749866752773e-6,
    1.6633168550847638e-72,
    5.8864671665275718e-8,
    1.6573195098469421e-72,
    4.3229672685027791e-9,
    1.6503751851917609e-72,
    -1.1369591588273712e-11,
    1.6424740644112671e-72,
    -6.6998339103553275e-12,
    1.6336043142105488e-72,
    -1.0079997652808475e-13,
    1.6237520658164571e-72,
    5.1524880092221163e-15,
    1.6129021897191999e-72,
    1.5216954471836971e-16,
    1.6010419620689236e-72,
    -1.8619464833687101e-18,
    1.5881581005911130e-72,
    -1.1301846184246265e-19,
    1.5742337560004366e-72,
    -9.6503064768571035e-23,
    1.5592506312683177e-72,
    5.2266106854276172e-23,
];

pub const C2: [f64; 37] = [
    0.0031461158539889123,
    2.6041527855292365e-65,
    -0.0023087838845307501,
    2.6162148472670453e-65,
    5.7698207666898440e-5,
    2.6402360341428211e-65,
    0.00035238862023665901,
    2.6760111530225948e-65,
    2.5246667458684434e-5,
    2.7232341117761732e-65,
    -3.4428211971931359e-6,
    2.7814999490880501e-65,
    -3.5350745566224589e-7,
    2.8503075287123957e-65,
    3.7308301837926254e-9,
    2.9290628876773891e-65,
    1.2776951864116635e-9,
    3.0170832252316373e-65,
    2.1874616204147058e-11,
    3.1136015165565187e-65,
    -1.9141410964610370e-12,
    3.2177717324381340e-65,
    -6.5628831021685227e-14,
    3.3286746431583701e-65,
    1.2586009182411716e-15,
    3.4453241818224602e-65,
    8.1400766238814627e-17,
    3.5666743392116122e-65,
    -5.4238742754886074e-20,
    3.6916265592411084e-65,
    -5.7969801310865431e-20,
    3.8190376008262507e-65,
    -5.3829165037463970e-22,
    3.9477278283374217e-65,
    2.6010080772383426e-23,
    4.0764898892986663e-65,
    4.6669667749113275e-25,
];

pub const C3: [f64; 38] = [
    -2.8355385364494769e-57,
    7.1232562212038732e-5,
    -5.6661076816020940e-57,
    0.00023234305298164808,
    -5.6512178943591033e-57,
    -0.00012929912045472475,
    -5.6264628357690169e-57,
    1.8074496413671439e-5,
    -5.5919342612153231e-57,
    6.5261851872204395e-6,
    -5.5477603744974375e-57,
    -1.1696365378521986e-7,
    -5.4941055647268543e-57,
    -7.3494761265181259e-8,
    -5.4311700549421797e-57,
    -1.7750910077907071e-9,
    -5.3591894530832144e-57,
    2.5555529613265251e-10,
    -5.2784341943997133e-57,
    1.1376636600537299e-11,
    -5.1892088631032133e-57,
    -3.3498638985302769e-13,
    -5.0918513801437026e-57,
    -2.5537379354163892e-14,
    -4.9867320434449759e-57,
    6.7665007713218708e-17,
    -4.8742524067954378e-57,
    2.9768884719919728e-17,
    -4.7548439838904558e-57,
    2.9952208087566914e-19,
    -4.6289667647765288e-57,
    -2.0461188497575092e-20,
    -4.4971075331672425e-57,
    -4.0869264533289923e-22,
    -4.3597779747887927e-57,
    8.4476121091139217e-24,
    -4.2175125690627906e-57,
    2.8302694448256255e-25,
];

