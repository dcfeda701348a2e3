namespace qde {}
