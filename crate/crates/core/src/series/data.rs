//! Integer polynomial data of the parametric generating functions.
//!
//! Coefficients are listed by ascending power.

/// Numerator polynomials in `tau` for genus 2..=6 (index 0 is genus 2).
pub const TAU_NUMERATORS: [&[i64]; 5] = [
    // genus 2
    &[
        2, -15, 48, -77,
        51,
    ],
    // genus 3
    &[
        45, -552, 3360, -13168,
        35172, -61872, 61676, -13164,
        -36888, 28496,
    ],
    // genus 4
    &[
        2016, -30456, 239697, -1320920,
        5541192, -17597520, 39814032, -53553072,
        1281984, 170357328, -389268768, 442844592,
        -243313744, 15509760, 32375616,
    ],
    // genus 5
    &[
        151200, -2490480, 21738240, -141393220,
        761835465, -3336459144, 11016156244, -23295865824,
        7568059872, 165542511744, -761565230016, 2000782619136,
        -3552865706240, 4243997599488, -2962590413376, 338393916800,
        1403096348736, -1163002515456, 239043447552, 61742404608,
    ],
    // genus 6
    &[
        17107200, -284717376, 2485496880, -17314508592,
        112079088144, -626336383104, 2630924485729, -6580517850696,
        -4043551301232, 138473163256176, -813298324826016, 3098312828500416,
        -8736443315384448, 18704646148809216, -29719458122609664, 31734000656779264,
        -13439214645718272, -22997164994372352, 54283457920223232, -55010184951564288,
        28025505345377280, -2073822560019456, -4933663711730688, 1584534210564096,
        178054771302400,
    ],
];

/// Numerator polynomials in the `t = tau / (1 - 2 tau)` parameter for
/// genus 2..=6 (index 0 is genus 2).
pub const T_NUMERATORS: [&[i64]; 5] = [
    // genus 2
    &[
        2, 1, 6, -1,
        1,
    ],
    // genus 3
    &[
        45, 258, 1008, 2288,
        2820, 3768, 1036, 1500,
        -120, 80,
    ],
    // genus 4
    &[
        2016, 25992, 181665, 800128,
        2365888, 5227024, 8418240, 10217040,
        10059552, 6151056, 4358016, 786480,
        653776, -33536, 16768,
    ],
    // genus 5
    &[
        151200, 3255120, 35501760, 245635580,
        1181820745, 4232899206, 11637842232, 25142796864,
        43591208976, 60654218080, 68713116608, 63452543616,
        46090300928, 29130502912, 11910647232, 5764983552,
        773106240, 450011520, -16832000, 6732800,
    ],
    // genus 6
    &[
        17107200, 536428224, 8274846384, 80913152016,
        556090776432, 2863185376896, 11475757049569, 36765061031004,
        96021082581732, 207088794784752, 372549313187520, 563018634260736,
        716686355273472, 771688966862592, 701152993531392, 535272874975232,
        346626234587904, 180120643165440, 83891900050944, 25803592571904,
        9488911137792, 1012254206976, 452750478336, -13272158208,
        4424052736,
    ],
];

/// Genus-2 numerator polynomial in `(p, q, r)` as `([a, b, c], coefficient)`
/// for the monomial `p^a q^b r^c`.
pub const GENUS2_PQR: &[([u32; 3], i64)] = &[
    ([0, 0, 0], 8),
    ([0, 0, 1], -36),
    ([0, 0, 2], 49),
    ([0, 0, 3], 14),
    ([0, 0, 4], -105),
    ([0, 0, 5], 112),
    ([0, 0, 6], -49),
    ([0, 0, 7], 6),
    ([0, 0, 8], 1),
    ([0, 1, 0], -36),
    ([0, 1, 1], 175),
    ([0, 1, 2], -315),
    ([0, 1, 3], 210),
    ([0, 1, 4], 70),
    ([0, 1, 5], -189),
    ([0, 1, 6], 105),
    ([0, 1, 7], -20),
    ([0, 2, 0], 49),
    ([0, 2, 1], -315),
    ([0, 2, 2], 735),
    ([0, 2, 3], -770),
    ([0, 2, 4], 315),
    ([0, 2, 5], 21),
    ([0, 2, 6], -35),
    ([0, 3, 0], 14),
    ([0, 3, 1], 210),
    ([0, 3, 2], -770),
    ([0, 3, 3], 910),
    ([0, 3, 4], -420),
    ([0, 3, 5], 56),
    ([0, 4, 0], -105),
    ([0, 4, 1], 70),
    ([0, 4, 2], 315),
    ([0, 4, 3], -420),
    ([0, 4, 4], 140),
    ([0, 5, 0], 112),
    ([0, 5, 1], -189),
    ([0, 5, 2], 21),
    ([0, 5, 3], 56),
    ([0, 6, 0], -49),
    ([0, 6, 1], 105),
    ([0, 6, 2], -35),
    ([0, 7, 0], 6),
    ([0, 7, 1], -20),
    ([0, 8, 0], 1),
    ([1, 0, 0], -36),
    ([1, 0, 1], 175),
    ([1, 0, 2], -315),
    ([1, 0, 3], 210),
    ([1, 0, 4], 70),
    ([1, 0, 5], -189),
    ([1, 0, 6], 105),
    ([1, 0, 7], -20),
    ([1, 1, 0], 175),
    ([1, 1, 1], -672),
    ([1, 1, 2], 1034),
    ([1, 1, 3], -876),
    ([1, 1, 4], 479),
    ([1, 1, 5], -116),
    ([1, 1, 6], -64),
    ([1, 1, 7], 40),
    ([1, 2, 0], -315),
    ([1, 2, 1], 1034),
    ([1, 2, 2], -1380),
    ([1, 2, 3], 1162),
    ([1, 2, 4], -821),
    ([1, 2, 5], 396),
    ([1, 2, 6], -76),
    ([1, 3, 0], 210),
    ([1, 3, 1], -876),
    ([1, 3, 2], 1162),
    ([1, 3, 3], -648),
    ([1, 3, 4], 264),
    ([1, 3, 5], -112),
    ([1, 4, 0], 70),
    ([1, 4, 1], 479),
    ([1, 4, 2], -821),
    ([1, 4, 3], 264),
    ([1, 4, 4], 8),
    ([1, 5, 0], -189),
    ([1, 5, 1], -116),
    ([1, 5, 2], 396),
    ([1, 5, 3], -112),
    ([1, 6, 0], 105),
    ([1, 6, 1], -64),
    ([1, 6, 2], -76),
    ([1, 7, 0], -20),
    ([1, 7, 1], 40),
    ([2, 0, 0], 49),
    ([2, 0, 1], -315),
    ([2, 0, 2], 735),
    ([2, 0, 3], -770),
    ([2, 0, 4], 315),
    ([2, 0, 5], 21),
    ([2, 0, 6], -35),
    ([2, 1, 0], -315),
    ([2, 1, 1], 1034),
    ([2, 1, 2], -1380),
    ([2, 1, 3], 1162),
    ([2, 1, 4], -821),
    ([2, 1, 5], 396),
    ([2, 1, 6], -76),
    ([2, 2, 0], 735),
    ([2, 2, 1], -1380),
    ([2, 2, 2], 720),
    ([2, 2, 3], -316),
    ([2, 2, 4], 393),
    ([2, 2, 5], -228),
    ([2, 2, 6], 76),
    ([2, 3, 0], -770),
    ([2, 3, 1], 1162),
    ([2, 3, 2], -316),
    ([2, 3, 3], -92),
    ([2, 3, 4], 16),
    ([2, 4, 0], 315),
    ([2, 4, 1], -821),
    ([2, 4, 2], 393),
    ([2, 4, 3], 16),
    ([2, 4, 4], -8),
    ([2, 5, 0], 21),
    ([2, 5, 1], 396),
    ([2, 5, 2], -228),
    ([2, 6, 0], -35),
    ([2, 6, 1], -76),
    ([2, 6, 2], 76),
    ([3, 0, 0], 14),
    ([3, 0, 1], 210),
    ([3, 0, 2], -770),
    ([3, 0, 3], 910),
    ([3, 0, 4], -420),
    ([3, 0, 5], 56),
    ([3, 1, 0], 210),
    ([3, 1, 1], -876),
    ([3, 1, 2], 1162),
    ([3, 1, 3], -648),
    ([3, 1, 4], 264),
    ([3, 1, 5], -112),
    ([3, 2, 0], -770),
    ([3, 2, 1], 1162),
    ([3, 2, 2], -316),
    ([3, 2, 3], -92),
    ([3, 2, 4], 16),
    ([3, 3, 0], 910),
    ([3, 3, 1], -648),
    ([3, 3, 2], -92),
    ([3, 3, 3], 40),
    ([3, 4, 0], -420),
    ([3, 4, 1], 264),
    ([3, 4, 2], 16),
    ([3, 5, 0], 56),
    ([3, 5, 1], -112),
    ([4, 0, 0], -105),
    ([4, 0, 1], 70),
    ([4, 0, 2], 315),
    ([4, 0, 3], -420),
    ([4, 0, 4], 140),
    ([4, 1, 0], 70),
    ([4, 1, 1], 479),
    ([4, 1, 2], -821),
    ([4, 1, 3], 264),
    ([4, 1, 4], 8),
    ([4, 2, 0], 315),
    ([4, 2, 1], -821),
    ([4, 2, 2], 393),
    ([4, 2, 3], 16),
    ([4, 2, 4], -8),
    ([4, 3, 0], -420),
    ([4, 3, 1], 264),
    ([4, 3, 2], 16),
    ([4, 4, 0], 140),
    ([4, 4, 1], 8),
    ([4, 4, 2], -8),
    ([5, 0, 0], 112),
    ([5, 0, 1], -189),
    ([5, 0, 2], 21),
    ([5, 0, 3], 56),
    ([5, 1, 0], -189),
    ([5, 1, 1], -116),
    ([5, 1, 2], 396),
    ([5, 1, 3], -112),
    ([5, 2, 0], 21),
    ([5, 2, 1], 396),
    ([5, 2, 2], -228),
    ([5, 3, 0], 56),
    ([5, 3, 1], -112),
    ([6, 0, 0], -49),
    ([6, 0, 1], 105),
    ([6, 0, 2], -35),
    ([6, 1, 0], 105),
    ([6, 1, 1], -64),
    ([6, 1, 2], -76),
    ([6, 2, 0], -35),
    ([6, 2, 1], -76),
    ([6, 2, 2], 76),
    ([7, 0, 0], 6),
    ([7, 0, 1], -20),
    ([7, 1, 0], -20),
    ([7, 1, 1], 40),
    ([8, 0, 0], 1),
];
