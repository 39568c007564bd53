// Generated by scripts/airy_golden.py (mpmath, 50 digits). Do not edit.
pub const AIRY_GOLDEN: &[(f64, f64)] = &[
    (-20.0, -0.17640612707798468959),
    (-19.5, 0.26780027210258394576),
    (-19.0, -0.14166127688042265637),
    (-18.5, -0.11208853977554047612),
    (-18.0, 0.27120454080441422158),
    (-17.5, -0.17266059066222626782),
    (-17.0, -0.10526230029095239023),
    (-16.5, 0.27886848056055083831),
    (-16.0, -0.14305793166909969778),
    (-15.5, -0.16644795409041976739),
    (-15.0, 0.27821749087082892953),
    (-14.5, -0.030597418939551422821),
    (-14.0, -0.26598348278407779838),
    (-13.5, 0.19098124329622029269),
    (-13.0, 0.17151043937053704463),
    (-12.5, -0.27627456138116024823),
    (-12.0, -0.066555175054373129474),
    (-11.5, 0.3054229700435926564),
    (-11.0, -0.00875958925570238129),
    (-10.5, -0.31192603505105060085),
    (-10.0, 0.040241238486443190689),
    (-9.5, 0.31910324771912820138),
    (-9.0, -0.022133721547341403674),
    (-8.5, -0.33029023763020887902),
    (-8.0, -0.052705050356386202622),
    (-7.5, 0.32177571638064787527),
    (-7.0, 0.18428083525050563728),
    (-6.5, -0.23802030199711580359),
    (-6.0, -0.32914517362982310523),
    (-5.5, 0.017781541276574975603),
    (-5.0, 0.35076100902411431979),
    (-4.5, 0.29215278105595946688),
    (-4.0, -0.070265532949289515099),
    (-3.5, -0.37553382314043191193),
    (-3.0, -0.37881429367765807435),
    (-2.5, -0.11232506769296608919),
    (-2.0, 0.22740742820168557599),
    (-1.5, 0.46425657774886940647),
    (-1.0, 0.5355608832923521188),
    (-0.5, 0.4757280916105395888),
    (0.0, 0.35502805388781723926),
    (0.5, 0.23169360648083348977),
    (1.0, 0.13529241631288141552),
    (1.5, 0.071749497008105409674),
    (2.0, 0.034924130423274379135),
    (2.5, 0.015725923380470489995),
    (3.0, 0.0065911393574607191443),
    (3.5, 0.0025840987869896349633),
    (4.0, 0.00095156385120480187362),
    (4.5, 0.00033025032351430898366),
    (5.0, 0.00010834442813607441735),
    (5.5, 0.000033685311908599814425),
    (6.0, 9.9476943602528895702e-6),
    (6.5, 2.7958823432049135855e-6),
    (7.0, 7.4921288639971670808e-7),
    (7.5, 1.9172560675134307516e-7),
    (8.0, 4.6922076160992316256e-8),
    (8.5, 1.0997009755195506509e-8),
    (9.0, 2.4711684308724898433e-9),
    (9.5, 5.3302637046174916266e-10),
    (10.0, 1.1047532552898685934e-10),
    (10.5, 2.2022745192834016435e-11),
    (11.0, 4.2262758649603595913e-12),
    (11.5, 7.8142901839628543461e-13),
    (12.0, 1.393184688875360839e-13),
    (12.5, 2.3968278260780499363e-14),
    (13.0, 3.981776078833335363e-15),
    (13.5, 6.3916738767418666507e-16),
    (14.0, 9.9202054911923772663e-17),
    (14.5, 1.4895374549659271953e-17),
    (15.0, 2.164962520737992299e-18),
    (15.5, 3.0475381524560126842e-19),
    (16.0, 4.1568888289170243947e-20),
    (16.5, 5.4969111729670607636e-21),
    (17.0, 7.0501972983886145424e-22),
    (17.5, 8.7742208232947097375e-23),
    (18.0, 1.0600466825247955656e-23),
    (18.5, 1.2437337669719404575e-24),
    (19.0, 1.4177043777933527189e-25),
    (19.5, 1.5705905615178183776e-26),
    (-25.0, 0.16352657883042946949),
    (-24.0, -0.14983659008188653329),
    (-22.3, 0.2477781795257503654),
    (-12.7, -0.13270691889389786571),
    (-8.0, -0.052705050356386202622),
    (-7.999, -0.051769279854246987669),
    (-1.0, 0.5355608832923521188),
    (-0.25, 0.41872461427545292423),
    (0.25, 0.29116395434854520627),
    (2.5, 0.015725923380470489995),
    (7.999, 4.7056407950239916765e-8),
    (8.0, 4.6922076160992316256e-8),
    (8.001, 4.6788119748582016548e-8),
    (10.0, 1.1047532552898685934e-10),
    (15.0, 2.164962520737992299e-18),
    (20.0, 1.6916728686705403136e-27),
    (24.5, 9.8133037974629947804e-37),
    (25.0, 8.1160268246913866838e-38),
];
// Ai(0)   hi/lo: (0.3550280538878172, 2.05233632436212e-17)
// -Ai'(0) hi/lo: (0.2588194037928068, -2.522243111610832e-17)
