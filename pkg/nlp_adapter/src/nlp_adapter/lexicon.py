"""French lexicon for the built-in deterministic micro model.

Lookup is by lowercased surface form. Words outside the table fall back to
PROPN when capitalized, NUM when numeric, NOUN otherwise.
"""

MONTHS = {
    "janvier", "février", "mars", "avril", "mai", "juin",
    "juillet", "août", "septembre", "octobre", "novembre", "décembre",
}

# form -> (lemma, upos)
LEXICON: dict[str, tuple[str, str]] = {
    # auxiliaries and copulas
    "est": ("être", "AUX"),
    "était": ("être", "AUX"),
    "fut": ("être", "AUX"),
    "sont": ("être", "AUX"),
    "étaient": ("être", "AUX"),
    "a": ("avoir", "AUX"),
    # frequent verbs (finite forms and participles)
    "né": ("naître", "VERB"),
    "née": ("naître", "VERB"),
    "nés": ("naître", "VERB"),
    "nées": ("naître", "VERB"),
    "mort": ("mourir", "VERB"),
    "morte": ("mourir", "VERB"),
    "morts": ("mourir", "VERB"),
    "décédé": ("décéder", "VERB"),
    "décédée": ("décéder", "VERB"),
    "épousa": ("épouser", "VERB"),
    "épouse": ("épouser", "VERB"),
    "étudia": ("étudier", "VERB"),
    "étudie": ("étudier", "VERB"),
    "aimait": ("aimer", "VERB"),
    "reçut": ("recevoir", "VERB"),
    "publia": ("publier", "VERB"),
    "écrivit": ("écrire", "VERB"),
    "attire": ("attirer", "VERB"),
    "abrite": ("abriter", "VERB"),
    "reste": ("rester", "VERB"),
    "fondée": ("fonder", "VERB"),
    "fondé": ("fonder", "VERB"),
    "situé": ("situer", "VERB"),
    "située": ("situer", "VERB"),
    "connue": ("connaître", "VERB"),
    "travailla": ("travailler", "VERB"),
    "vécut": ("vivre", "VERB"),
    # determiners
    "le": ("le", "DET"),
    "la": ("le", "DET"),
    "les": ("le", "DET"),
    "l'": ("le", "DET"),
    "l’": ("le", "DET"),
    "un": ("un", "DET"),
    "une": ("un", "DET"),
    "des": ("un", "DET"),
    "son": ("son", "DET"),
    "sa": ("son", "DET"),
    "ses": ("son", "DET"),
    "leur": ("son", "DET"),
    # adpositions
    "à": ("à", "ADP"),
    "de": ("de", "ADP"),
    "d'": ("de", "ADP"),
    "d’": ("de", "ADP"),
    "en": ("en", "ADP"),
    "sur": ("sur", "ADP"),
    "pour": ("pour", "ADP"),
    "dans": ("dans", "ADP"),
    "par": ("par", "ADP"),
    "au": ("au", "ADP"),
    "aux": ("au", "ADP"),
    "du": ("du", "ADP"),
    # pronouns
    "il": ("il", "PRON"),
    "elle": ("elle", "PRON"),
    "ils": ("il", "PRON"),
    "elles": ("elle", "PRON"),
    # adverbs
    "plus": ("plus", "ADV"),
    "très": ("très", "ADV"),
    # numerals written out
    "deux": ("deux", "NUM"),
    "trois": ("trois", "NUM"),
    # common nouns of the domain
    "écrivain": ("écrivain", "NOUN"),
    "écrivaine": ("écrivaine", "NOUN"),
    "physicienne": ("physicienne", "NOUN"),
    "physicien": ("physicien", "NOUN"),
    "chimiste": ("chimiste", "NOUN"),
    "poète": ("poète", "NOUN"),
    "romancière": ("romancière", "NOUN"),
    "romancier": ("romancier", "NOUN"),
    "peintre": ("peintre", "NOUN"),
    "université": ("université", "NOUN"),
    "école": ("école", "NOUN"),
    "œuvre": ("œuvre", "NOUN"),
    "mer": ("mer", "NOUN"),
    "héroïne": ("héroïne", "NOUN"),
    "histoire": ("histoire", "NOUN"),
    "village": ("village", "NOUN"),
    "maison": ("maison", "NOUN"),
    "prix": ("prix", "NOUN"),
    "travaux": ("travail", "NOUN"),
    "rage": ("rage", "NOUN"),
    "football": ("football", "NOUN"),
    "recueil": ("recueil", "NOUN"),
    "romans": ("roman", "NOUN"),
    "roman": ("roman", "NOUN"),
    "ville": ("ville", "NOUN"),
    "musées": ("musée", "NOUN"),
    "musée": ("musée", "NOUN"),
    "horloges": ("horloge", "NOUN"),
    "visiteurs": ("visiteur", "NOUN"),
    "chimie": ("chimie", "NOUN"),
    # adjectives
    "français": ("français", "ADJ"),
    "française": ("français", "ADJ"),
    "polonaise": ("polonais", "ADJ"),
    "polonais": ("polonais", "ADJ"),
    "normale": ("normal", "ADJ"),
    "supérieure": ("supérieur", "ADJ"),
    "immense": ("immense", "ADJ"),
    "romanesque": ("romanesque", "ADJ"),
    "natale": ("natal", "ADJ"),
    "nombreux": ("nombreux", "ADJ"),
    "célèbre": ("célèbre", "ADJ"),
    "célèbres": ("célèbre", "ADJ"),
    "connu": ("connu", "ADJ"),
    "champêtres": ("champêtre", "ADJ"),
    "considérable": ("considérable", "ADJ"),
}

for _month in MONTHS:
    LEXICON[_month] = (_month, "NOUN")
