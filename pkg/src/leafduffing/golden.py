"""Digits printed in the published tables, kept verbatim as strings.

Cells are strings so the number of printed decimals is preserved; a blank
string marks a cell left empty in print. Extremum tables carry their row
label such as "(2U)" in the first column.
"""

GOLDEN_TABLES: dict[str, tuple[tuple[str, ...], ...]] = {
    "T1": (
        ("0.0", "0.0", "1.0", "0.0", "0.0"),
        ("0.1", "0.100001", "1.010050302", "0.005000017", "0.100334338"),
        ("0.2", "0.200032004", "1.040819659", "0.020001067", "0.202699225"),
        ("0.3", "0.300243164", "1.094280815", "0.045012155", "0.309252773"),
        ("0.4", "0.401026189", "1.174155243", "0.080068354", "0.422433069"),
        ("0.5", "0.503141363", "1.286737281", "0.125261234", "0.545169614"),
        ("0.6", "0.607860912", "1.442513783", "0.180782679", "0.681212481"),
        ("0.7", "0.717150254", "1.659450438", "0.246984703", "0.835695885"),
        ("0.8", "0.833926638", "1.970197693", "0.324460822", "1.016197007"),
        ("0.9", "0.962467275", "2.439867095", "0.414159959", "1.234951913"),
        ("1", "1.10910365", "3.218145911", "0.517553929", "1.514209452"),
        ("1.1", "1.283479121", "4.739630017", "0.636899254", "1.90228478"),
        ("1.2", "1.500980201", "9.006810867", "0.775675993", "2.544535649"),
        ("1.3", "1.787827508", "90.67188404", "0.939383753", "4.853820909"),
        ("1.4", "2.192925266", "", "1.137129615", ""),
        ("1.5", "2.819825139", "", "1.385213908", ""),
        ("1.6", "3.934210676", "", "1.716804817", ""),
        ("1.7", "6.489993451", "", "2.216905555", ""),
        ("1.8", "18.49292858", "", "3.263963079", ""),
    ),
    "T2": (
        ("-1.3", "64.11860322", "263604.0988", "1054224.039"),
        ("-1.2", "6.407910814", "263.1172829", "1033.245399"),
        ("-1.1", "3.42520749", "40.18469304", "150.4631497"),
        ("-1", "2.382904017", "13.53068078", "46.97401106"),
        ("-0.9", "1.864530965", "6.48199663", "20.33439362"),
        ("-0.8", "1.562318622", "3.813368964", "10.56651999"),
        ("-0.7", "1.369995576", "2.571328091", "6.175325634"),
        ("-0.6", "1.241137787", "1.911877201", "3.924095444"),
        ("-0.5", "1.152322184", "1.530106881", "2.663460974"),
        ("-0.4", "1.090559612", "1.297024649", "1.916419762"),
        ("-0.3", "1.048200959", "1.151684863", "1.462136572"),
        ("-0.2", "1.020613924", "1.063125332", "1.190659556"),
        ("-0.1", "1.005037714", "1.015189405", "1.045644478"),
        ("0", "1", "1", "1"),
        ("0.1", "1.005037714", "1.015189405", "1.045644478"),
        ("0.2", "1.020613924", "1.063125332", "1.190659556"),
        ("0.3", "1.048200959", "1.151684863", "1.462136572"),
        ("0.4", "1.090559612", "1.297024649", "1.916419762"),
        ("0.5", "1.152322184", "1.530106881", "2.663460974"),
        ("0.6", "1.241137787", "1.911877201", "3.924095444"),
        ("0.7", "1.369995576", "2.571328091", "6.175325634"),
        ("0.8", "1.562318622", "3.813368964", "10.56651999"),
        ("0.9", "1.864530965", "6.48199663", "20.33439362"),
        ("1", "2.382904017", "13.53068078", "46.97401106"),
        ("1.1", "3.42520749", "40.18469304", "150.4631497"),
        ("1.2", "6.407910814", "263.1172829", "1033.245399"),
        ("1.3", "64.11860322", "263604.0988", "1054224.039"),
    ),
    "T3": (
        ("-1.3", "-64.11080469", "-263507.9268", "-1054272.011"),
        ("-1.2", "-6.329401315", "-253.5641778", "-1033.249417"),
        ("-1.1", "-3.275980212", "-35.15797148", "-150.4601587"),
        ("-1", "-2.162921994", "-10.11864992", "-46.96343323"),
        ("-0.9", "-1.573682217", "-3.897185801", "-20.30981105"),
        ("-0.8", "-1.20034973", "-1.729511276", "-10.51910279"),
        ("-0.7", "-0.936422917", "-0.821137905", "-6.093824366"),
        ("-0.6", "-0.735134686", "-0.397283697", "-3.794540983"),
        ("-0.5", "-0.572578742", "-0.187717888", "-2.468609061"),
        ("-0.4", "-0.435109489", "-0.082375045", "-1.634829526"),
        ("-0.3", "-0.314205747", "-0.031020041", "-1.066698123"),
        ("-0.2", "-0.204090129", "-0.008500921", "-0.646274802"),
        ("-0.1", "-0.100502766", "-0.001015159", "-0.305570034"),
        ("0", "0", "0", "0"),
        ("0.1", "0.100502766", "0.001015159", "0.305570034"),
        ("0.2", "0.204090129", "0.008500921", "0.646274802"),
        ("0.3", "0.314205747", "0.031020041", "1.066698123"),
        ("0.4", "0.435109489", "0.082375045", "1.634829526"),
        ("0.5", "0.572578742", "0.187717888", "2.468609061"),
        ("0.6", "0.735134686", "0.397283697", "3.794540983"),
        ("0.7", "0.936422917", "0.821137905", "6.093824366"),
        ("0.8", "1.20034973", "1.729511276", "10.51910279"),
        ("0.9", "1.573682217", "3.897185801", "20.30981105"),
        ("1", "2.162921994", "10.11864992", "46.96343323"),
        ("1.1", "3.275980212", "35.15797148", "150.4601587"),
        ("1.2", "6.329401315", "253.5641778", "1033.249417"),
        ("1.3", "64.11080469", "263507.9268", "1054272.011"),
    ),
    "T4": (
        ("-1.3", "90.69299413", "745969.7552", "1490897.888"),
        ("-1.2", "9.218211398", "783.3213979", "1460.769087"),
        ("-1.1", "5.135927878", "135.4742481", "211.9609381"),
        ("-1", "3.789591734", "54.42234777", "65.32012665"),
        ("-0.9", "3.173173112", "31.95076764", "27.45673813"),
        ("-0.8", "2.849526806", "23.13759636", "13.54756343"),
        ("-0.7", "2.667396157", "18.97852968", "7.321249434"),
        ("-0.6", "2.560946671", "16.79583519", "4.178464757"),
        ("-0.5", "2.497442952", "15.57710437", "2.470362978"),
        ("-0.4", "2.459244636", "14.87322673", "1.501336344"),
        ("-0.3", "2.436395606", "14.46250169", "0.94231307"),
        ("-0.2", "2.423168514", "14.22822918", "0.625685442"),
        ("-0.1", "2.416325506", "14.10802806", "0.463877721"),
        ("0", "2.414213562", "14.07106781", "0.414213562"),
        ("0.1", "2.416325506", "14.10802806", "0.463877721"),
        ("0.2", "2.423168514", "14.22822918", "0.625685442"),
        ("0.3", "2.436395606", "14.46250169", "0.94231307"),
        ("0.4", "2.459244636", "14.87322673", "1.501336344"),
        ("0.5", "2.497442952", "15.57710437", "2.470362978"),
        ("0.6", "2.560946671", "16.79583519", "4.178464757"),
        ("0.7", "2.667396157", "18.97852968", "7.321249434"),
        ("0.8", "2.849526806", "23.13759636", "13.54756343"),
        ("0.9", "3.173173112", "31.95076764", "27.45673813"),
        ("1", "3.789591734", "54.42234777", "65.32012665"),
        ("1.1", "5.135927878", "135.4742481", "211.9609381"),
        ("1.2", "9.218211398", "783.3213979", "1460.769087"),
        ("1.3", "90.69299413", "745969.7552", "1490897.888"),
    ),
    "T5": (
        ("-1.3", "-0.203943407", "-0.0084826", "0.034470582"),
        ("-1.2", "-0.215597164", "-0.010021417", "0.070159104"),
        ("-1.1", "-0.226540444", "-0.011626185", "0.116551151"),
        ("-1.0", "-0.236307021", "-0.013195622", "0.176516436"),
        ("-0.9", "-0.244294135", "-0.014579382", "0.253778736"),
        ("-0.8", "-0.249725215", "-0.015573535", "0.353055955"),
        ("-0.7", "-0.251602503", "-0.0159274", "0.480320133"),
        ("-0.6", "-0.248647118", "-0.015372705", "0.643034898"),
        ("-0.5", "-0.239224366", "-0.013690403", "0.850315776"),
        ("-0.4", "-0.221252392", "-0.010830884", "1.113050698"),
        ("-0.3", "-0.192093247", "-0.007088205", "1.443881365"),
        ("-0.2", "-0.148426715", "-0.003269913", "1.857080067"),
        ("-0.1", "-0.086107351", "-0.000638441", "2.368914385"),
        ("0", "0", "0", "3"),
        ("0.1", "0.116233275", "0.001570332", "3.783778377"),
        ("0.2", "0.270486954", "0.019789689", "4.790941844"),
        ("0.3", "0.472968457", "0.105802647", "6.191958894"),
        ("0.4", "0.738030422", "0.401996982", "8.415748922"),
        ("0.5", "1.088787044", "1.290710471", "12.56683153"),
        ("0.6", "1.569138605", "3.863526737", "21.69657816"),
        ("0.7", "2.277895182", "11.81955724", "45.67358469"),
        ("0.8", "3.485728688", "42.3526649", "127.5548632"),
        ("0.9", "6.220097075", "240.6531152", "605.0071132"),
        ("1.0", "20.01721695", "8020.678131", "17263.60074"),
    ),
    "T6": (
        ("-1.3", "0.472441888", "0.105449661", "0.051898217"),
        ("-1.2", "0.498895941", "0.124173783", "0.051915902"),
        ("-1.1", "0.525873021", "0.145426205", "0.056603345"),
        ("-1.0", "0.553421826", "0.169499667", "0.068162077"),
        ("-0.9", "0.581660476", "0.196792554", "0.089646632"),
        ("-0.8", "0.610807381", "0.227883473", "0.125364194"),
        ("-0.7", "0.641224819", "0.26365194", "0.181487155"),
        ("-0.6", "0.673481459", "0.305475886", "0.267021052"),
        ("-0.5", "0.708443676", "0.355562526", "0.395339264"),
        ("-0.4", "0.747411388", "0.417521777", "0.586723946"),
        ("-0.3", "0.792324421", "0.49740383", "0.872693767"),
        ("-0.2", "0.846083923", "0.605675949", "1.303697695"),
        ("-0.1", "0.913068861", "0.761220712", "1.963756376"),
        ("0", "1", "1", "3"),
        ("0.1", "1.117463203", "1.395403132", "4.687637715"),
        ("0.2", "1.28278683", "2.110879669", "7.587902875"),
        ("0.3", "1.525994729", "3.553522755", "12.98313508"),
        ("0.4", "1.903703402", "6.899186071", "24.28272498"),
        ("0.5", "2.537412837", "16.33704096", "52.72116914"),
        ("0.6", "3.748216016", "52.65914896", "150.0200518"),
        ("0.7", "6.779310073", "311.5706171", "767.2598046"),
        ("0.8", "26.03361091", "17644.25107", "37347.95494"),
    ),
    "T7": (
        ("(1U)", "0.210868709", "1.123036671"),
        ("(2U)", "1.620875816", "5.028840775"),
        ("(3U)", "2.200796752", "9.016117892"),
        ("(4U)", "2.566666239", "13.0111741"),
        ("(5U)", "2.834218406", "17.00854947"),
        ("(6U)", "3.045181426", "21.0069228"),
    ),
    "T8": (
        ("(1D)", "1.129468643", "-3.047364138"),
        ("(2D)", "1.951794708", "-7.020686991"),
        ("(3D)", "2.40029079", "-11.01319903"),
        ("(4D)", "2.709340595", "-15.00968732"),
        ("(5D)", "2.945243827", "-19.00765067"),
        ("(6D)", "3.136043671", "-23.00632133"),
    ),
    "T9": (
        ("(1U)", "0.0", "1.0"),
        ("(2U)", "1.609437912", "5.0"),
        ("(3U)", "2.197224577", "9.0"),
        ("(4U)", "2.564949357", "13.0"),
        ("(5U)", "2.833213344", "17.0"),
        ("(6U)", "3.044522438", "21.0"),
    ),
    "T10": (
        ("(1D)", "1.098612289", "-3.0"),
        ("(2D)", "1.945910149", "-7.0"),
        ("(3D)", "2.397895273", "-11.0"),
        ("(4D)", "2.708050201", "-15.0"),
        ("(5D)", "2.944438979", "-19.0"),
        ("(6D)", "3.135494216", "-23.0"),
    ),
    "T11": (
        ("-1.0", "-0.228880075", "-0.011990132", "0.169455704"),
        ("-0.8", "-0.245174519", "-0.014737574", "0.362522502"),
        ("-0.6", "-0.246594795", "-0.014995181", "0.668372752"),
        ("-0.4", "-0.220730277", "-0.010754389", "1.140829977"),
        ("-0.2", "-0.148394692", "-0.003267797", "1.868015936"),
        ("0.0", "0", "0", "3"),
        ("0.2", "0.270356983", "0.019761175", "4.700945926"),
        ("0.4", "0.729443961", "0.388128738", "6.436195696"),
        ("0.6", "1.432075704", "2.936959316", "3.391086916"),
        ("0.8", "2.209335527", "10.78412786", "-16.83682468"),
        ("1.0", "2.301435961", "12.18980293", "-37.53445744"),
        ("1.2", "1.001645424", "1.004944398", "-33.94050058"),
        ("1.4", "-1.750314905", "-5.362268712", "-39.49603198"),
        ("1.6", "-4.951062236", "-121.3654741", "240.7147121"),
        ("1.8", "-1.176291742", "-1.627590492", "111.7952215"),
        ("2.0", "7.187993559", "371.3838704", "-682.6341556"),
        ("2.2", "-1.433450358", "-2.945425026", "-239.8177858"),
        ("2.4", "-5.102484331", "-132.8449468", "616.6525292"),
        ("2.6", "8.555042892", "626.1329714", "-1741.232719"),
        ("2.8", "-4.727862807", "-105.6804362", "1015.14273"),
        ("3.0", "-14.27534157", "-2909.10586", "4759.409349"),
    ),
    "T12": (
        ("(1U)", "1.410965189", "4.064588954"),
        ("(2U)", "2.085801435", "8.032995533"),
        ("(3U)", "2.487749982", "12.02208815"),
        ("(4U)", "2.774191427", "16.0165903"),
        ("(5U)", "2.996758996", "20.01328124"),
        ("(6U)", "3.178767206", "24.01107178"),
    ),
    "T13": (
        ("(1D)", "0.781810055", "-2.119912637"),
        ("(2D)", "1.802974309", "-6.043743891"),
        ("(3D)", "2.306670971", "-10.02646708"),
        ("(4D)", "2.641148943", "-14.01894944"),
        ("(5D)", "2.891638805", "-18.01475276"),
        ("(6D)", "3.091891237", "-22.01207638"),
    ),
    "T14": (
        ("(1U)", "1.386294361", "4.0"),
        ("(2U)", "2.079441542", "8.0"),
        ("(3U)", "2.48490665", "12.0"),
        ("(4U)", "2.772588722", "16.0"),
        ("(5U)", "2.995732274", "20.0"),
        ("(6U)", "3.17805383", "24.0"),
    ),
    "T15": (
        ("(1D)", "0.693147181", "-2.0"),
        ("(2D)", "1.791759469", "-6.0"),
        ("(3D)", "2.302585093", "-10.0"),
        ("(4D)", "2.63905733", "-14.0"),
        ("(5D)", "2.890371758", "-18.0"),
        ("(6D)", "3.091042453", "-22.0"),
    ),
    "T16": (
        ("-1.0", "-0.228880075", "-0.011990132", "0.169455704"),
        ("-0.8", "-0.245174519", "-0.014737574", "0.362522502"),
        ("-0.6", "-0.246594795", "-0.014995181", "0.668372752"),
        ("-0.4", "-0.220730277", "-0.010754389", "1.140829977"),
        ("-0.2", "-0.148394692", "-0.003267797", "1.868015936"),
        ("0.0", "0", "0", "3"),
        ("0.2", "0.270356983", "0.019761175", "4.700945926"),
        ("0.4", "0.729443961", "0.388128738", "6.436195696"),
        ("0.6", "1.432075704", "2.936959316", "3.391086916"),
        ("0.8", "2.209335527", "10.78412786", "-16.83682468"),
        ("1.0", "2.301435961", "12.18980293", "-37.53445744"),
        ("1.2", "1.001645424", "1.004944398", "-33.94050058"),
        ("1.4", "-1.750314905", "-5.362268712", "-39.49603198"),
        ("1.6", "-4.951062236", "-121.3654741", "240.7147121"),
        ("1.8", "-1.176291742", "-1.627590492", "111.7952215"),
        ("2.0", "7.187993559", "371.3838704", "-682.6341556"),
        ("2.2", "-1.433450358", "-2.945425026", "-239.8177858"),
        ("2.4", "-5.102484331", "-132.8449468", "616.6525292"),
        ("2.6", "8.555042892", "626.1329714", "-1741.232719"),
        ("2.8", "-4.727862807", "-105.6804362", "1015.14273"),
        ("3.0", "-14.27534157", "-2909.10586", "4759.409349"),
    ),
    "T17": (
        ("-1.0", "0.244542736", "0.014623937", "0.579513405"),
        ("-0.8", "0.330540411", "0.036113842", "0.76765176"),
        ("-0.6", "0.447219762", "0.089446419", "0.943931473"),
        ("-0.4", "0.601180255", "0.217277185", "0.967542439"),
        ("-0.2", "0.792261897", "0.497286086", "0.503471721"),
        ("0.0", "1", "1", "-1"),
        ("0.2", "1.16295608", "1.572859538", "-3.87155113"),
        ("0.4", "1.169058724", "1.597750571", "-7.295850123"),
        ("0.6", "0.885786053", "0.695002734", "-10.18243951"),
        ("0.8", "0.190255594", "0.006886718", "-14.68217896"),
        ("1", "-1.103990273", "-1.345537298", "-20.27654537"),
        ("1.2", "-3.030509208", "-27.83215433", "34.3447341"),
        ("1.4", "-3.358521674", "-37.88300891", "108.3067894"),
        ("1.6", "0.098793687", "0.000964245", "73.69438548"),
        ("1.8", "5.825094124", "197.6554719", "-348.3448888"),
        ("2.0", "1.227138245", "1.84790855", "-166.2009369"),
        ("2.2", "-8.800138309", "-681.5041324", "1429.919587"),
        ("2.4", "8.867240254", "697.2129209", "-1107.636432"),
        ("2.6", "-8.774753605", "-675.6235683", "850.1465684"),
        ("2.8", "15.13718215", "3468.447383", "-6490.862527"),
        ("3.0", "-11.51700432", "-1527.631446", "4186.746094"),
    ),
}

# T16 repeats the rows of T11 cell for cell.
DUPLICATE_TABLES = {"T16": "T11"}
