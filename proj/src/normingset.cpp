namespace schreier {}
